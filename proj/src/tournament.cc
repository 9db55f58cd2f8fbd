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


#include "duelbias/tournament.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <unordered_map>

#include "duelbias/error.h"

namespace duelbias {
namespace {

std::vector<std::size_t> Permutation(std::size_t n, std::mt19937_64& rng) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  return perm;
}

int Sign(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace

SchedulePlan SampleBalancedDuels(std::span<const std::string> group_a,
                                 std::span<const std::string> group_b,
                                 int duels_per_item, std::uint64_t seed,
                                 const ScheduleOptions& options) {
  if (group_a.size() != group_b.size()) {
    throw ValidationError("group sizes differ: " +
                          std::to_string(group_a.size()) + " vs " +
                          std::to_string(group_b.size()));
  }
  if (group_a.empty()) throw DomainError("groups must be non-empty");
  if (duels_per_item < 1) throw DomainError("duels_per_item must be >= 1");
  const std::size_t n = group_a.size();
  const auto rounds = static_cast<std::size_t>(duels_per_item);
  if (options.distinct_opponents && rounds > n) {
    throw ValidationError("infeasible schedule: " + std::to_string(rounds) +
                          " distinct opponents requested from a group of " +
                          std::to_string(n));
  }

  SchedulePlan plan;
  plan.group_a.assign(group_a.begin(), group_a.end());
  plan.group_b.assign(group_b.begin(), group_b.end());
  plan.duels_per_item = duels_per_item;
  plan.pairs.reserve(rounds * n);

  std::mt19937_64 rng(seed);
  if (options.distinct_opponents) {
    const std::vector<std::size_t> order_a = Permutation(n, rng);
    const std::vector<std::size_t> order_b = Permutation(n, rng);
    const std::vector<std::size_t> offsets = Permutation(n, rng);
    for (std::size_t r = 0; r < rounds; ++r) {
      for (std::size_t i = 0; i < n; ++i) {
        plan.pairs.emplace_back(group_a[order_a[i]],
                                group_b[order_b[(i + offsets[r]) % n]]);
      }
    }
    return plan;
  }
  for (std::size_t r = 0; r < rounds; ++r) {
    const std::vector<std::size_t> match = Permutation(n, rng);
    for (std::size_t i = 0; i < n; ++i) {
      plan.pairs.emplace_back(group_a[i], group_b[match[i]]);
    }
  }
  return plan;
}

double KendallTauB(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw DomainError("tau inputs differ in length");
  if (xs.size() < 2) throw DomainError("tau needs at least two items");
  double concordant_minus_discordant = 0.0;
  double untied_x = 0.0, untied_y = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      const int sx = Sign(xs[i] - xs[j]);
      const int sy = Sign(ys[i] - ys[j]);
      concordant_minus_discordant += sx * sy;
      untied_x += sx != 0;
      untied_y += sy != 0;
    }
  }
  if (untied_x == 0.0 || untied_y == 0.0) {
    throw DomainError("tau undefined when one ranking is fully tied");
  }
  return concordant_minus_discordant / std::sqrt(untied_x * untied_y);
}

double KendallTau(std::span<const std::string> rank_a,
                  std::span<const std::string> rank_b) {
  if (rank_a.size() != rank_b.size()) {
    throw DomainError("rankings cover different item sets");
  }
  std::unordered_map<std::string_view, double> position_b;
  for (std::size_t i = 0; i < rank_b.size(); ++i) {
    if (!position_b.emplace(rank_b[i], static_cast<double>(i)).second) {
      throw DomainError("duplicate item in ranking: " + rank_b[i]);
    }
  }
  std::vector<double> xs, ys;
  xs.reserve(rank_a.size());
  ys.reserve(rank_a.size());
  for (std::size_t i = 0; i < rank_a.size(); ++i) {
    const auto it = position_b.find(rank_a[i]);
    if (it == position_b.end()) {
      throw DomainError("rankings cover different item sets: " + rank_a[i]);
    }
    xs.push_back(static_cast<double>(i));
    ys.push_back(it->second);
    position_b.erase(it);
  }
  return KendallTauB(xs, ys);
}

RecoveryCurve SimulateRankRecovery(const RecoveryConfig& config) {
  if (config.n_items_per_group < 1) {
    throw DomainError("n_items_per_group must be >= 1");
  }
  if (config.replicates < 1) throw DomainError("replicates must be >= 1");
  if (config.budgets.empty()) throw DomainError("no budgets given");
  if (!(config.quality_scale > 0.0)) {
    throw DomainError("quality_scale must be > 0");
  }
  config.fit.Validate();
  const int n = config.n_items_per_group;
  for (int budget : config.budgets) {
    if (budget < n || budget % n != 0) {
      throw ValidationError("infeasible schedule: budget " +
                            std::to_string(budget) +
                            " is not a positive multiple of " +
                            std::to_string(n) + " items per group");
    }
    if (config.schedule.distinct_opponents && budget / n > n) {
      throw ValidationError("infeasible schedule: budget " +
                            std::to_string(budget) +
                            " needs more distinct opponents than exist");
    }
  }

  std::vector<std::string> ids_a, ids_b;
  for (int i = 0; i < n; ++i) {
    ids_a.push_back("a" + std::to_string(i));
    ids_b.push_back("b" + std::to_string(i));
  }
  std::vector<std::string> all_ids = ids_a;
  all_ids.insert(all_ids.end(), ids_b.begin(), ids_b.end());
  const auto index_a = [](const std::string& id) {
    return static_cast<std::size_t>(std::stoul(id.substr(1)));
  };

  RecoveryCurve curve;
  curve.budgets = config.budgets;
  curve.replicates = config.replicates;
  curve.seed = config.seed;
  curve.taus.assign(config.budgets.size(),
                    std::vector<double>(config.replicates, 0.0));

  for (int r = 0; r < config.replicates; ++r) {
    std::mt19937_64 rng(config.seed + static_cast<std::uint64_t>(r));
    std::normal_distribution<double> normal(0.0, config.quality_scale);
    std::vector<double> quality(2 * n);
    for (double& q : quality) q = normal(rng);

    for (std::size_t b = 0; b < config.budgets.size(); ++b) {
      const int per_item = config.budgets[b] / n;
      const SchedulePlan plan = SampleBalancedDuels(
          ids_a, ids_b, per_item, rng(), config.schedule);
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      std::vector<Duel> duels;
      duels.reserve(plan.pairs.size());
      for (const auto& [a, bid] : plan.pairs) {
        const std::size_t ia = index_a(a);
        const std::size_t ib = n + index_a(bid);
        const double p_a =
            WinProbability(std::exp(quality[ia]), std::exp(quality[ib]));
        if (unit(rng) < p_a) {
          duels.push_back({ia, ib});
        } else {
          duels.push_back({ib, ia});
        }
      }
      const ScoreTable fitted =
          Fit(ComparisonGraph(all_ids, std::move(duels)), config.fit);
      curve.taus[b][r] = KendallTauB(quality, fitted.scores);
    }
  }

  for (const std::vector<double>& taus : curve.taus) {
    const double mean = std::accumulate(taus.begin(), taus.end(), 0.0) /
                        static_cast<double>(taus.size());
    double ss = 0.0;
    for (double t : taus) ss += (t - mean) * (t - mean);
    curve.mean_tau.push_back(mean);
    curve.std_tau.push_back(
        taus.size() > 1 ? std::sqrt(ss / static_cast<double>(taus.size() - 1))
                        : 0.0);
  }
  return curve;
}

}  // namespace duelbias
