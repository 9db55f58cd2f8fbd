// Copyright 2026 The Duelbias Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Random fixtures shared by tests.

#ifndef DUELBIAS_TESTS_TEST_UTIL_H_
#define DUELBIAS_TESTS_TEST_UTIL_H_

#include <cmath>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "duelbias/catalog.h"
#include "duelbias/choice_model.h"

namespace duelbias::testing {

inline std::vector<std::string> Ids(int n, const std::string& prefix = "i") {
  std::vector<std::string> ids;
  for (int i = 0; i < n; ++i) ids.push_back(prefix + std::to_string(i));
  return ids;
}

// Random duels between `n` items with winners drawn from the BT model under
// log-scores `theta`.
inline std::vector<Duel> RandomDuels(const std::vector<double>& theta, int count,
                                     std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, theta.size() - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Duel> duels;
  while (static_cast<int>(duels.size()) < count) {
    const std::size_t a = pick(rng), b = pick(rng);
    if (a == b) continue;
    const double p_a = 1.0 / (1.0 + std::exp(theta[b] - theta[a]));
    duels.push_back(unit(rng) < p_a ? Duel{a, b} : Duel{b, a});
  }
  return duels;
}

// Two-group fixture: `per_group` items per group in each category, every
// item in `per_item` cross-group duels per dimension, BT outcomes with
// group-B log-qualities shifted by `offset`.
struct SyntheticStudy {
  ItemCatalog catalog;
  std::vector<DuelRecord> duels;
  std::vector<double> true_quality;  // aligned with catalog.items()
};

inline SyntheticStudy MakeStudy(const std::vector<std::string>& categories,
                                const std::vector<std::string>& dimensions,
                                int per_group, int per_item, double offset,
                                std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  SyntheticStudy study;
  std::vector<ItemRecord> items;
  int duel_counter = 0;
  for (const std::string& category : categories) {
    const std::size_t base = items.size();
    for (int g = 0; g < 2; ++g) {
      for (int i = 0; i < per_group; ++i) {
        ItemRecord item;
        item.item_id = category + (g == 0 ? "-m" : "-t") + std::to_string(i);
        item.group = g == 0 ? Group::kA : Group::kB;
        item.category = category;
        items.push_back(item);
        study.true_quality.push_back(normal(rng) + (g == 0 ? 0.0 : offset));
      }
    }
    for (const std::string& dimension : dimensions) {
      for (int round = 0; round < per_item; ++round) {
        std::vector<int> perm(per_group);
        for (int i = 0; i < per_group; ++i) perm[i] = i;
        std::shuffle(perm.begin(), perm.end(), rng);
        for (int i = 0; i < per_group; ++i) {
          const std::size_t ia = base + i;
          const std::size_t ib = base + per_group + perm[i];
          const double p_a =
              1.0 / (1.0 + std::exp(study.true_quality[ib] - study.true_quality[ia]));
          DuelRecord duel;
          duel.duel_id = "d" + std::to_string(++duel_counter);
          duel.category = category;
          duel.dimension = dimension;
          duel.item_a = items[ia].item_id;
          duel.item_b = items[ib].item_id;
          duel.winner = unit(rng) < p_a ? Group::kA : Group::kB;
          duel.rater_id = "r" + std::to_string(duel_counter % 7);
          study.duels.push_back(duel);
        }
      }
    }
  }
  study.catalog = ItemCatalog(std::move(items));
  return study;
}

}  // namespace duelbias::testing

#endif  // DUELBIAS_TESTS_TEST_UTIL_H_
