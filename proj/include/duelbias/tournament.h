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


// Balanced cross-group duel schedules and rank-recovery simulation.

#ifndef DUELBIAS_TOURNAMENT_H_
#define DUELBIAS_TOURNAMENT_H_

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "duelbias/choice_model.h"

namespace duelbias {

struct SchedulePlan {
  std::vector<std::string> group_a;
  std::vector<std::string> group_b;
  int duels_per_item = 0;
  // (group-A id, group-B id), round by round.
  std::vector<std::pair<std::string, std::string>> pairs;
};

struct ScheduleOptions {
  // Forbid repeated (a, b) pairs. Needs duels_per_item <= group size.
  bool distinct_opponents = false;
};

// Stacks `duels_per_item` random perfect matchings between the two groups,
// so every item appears in exactly `duels_per_item` pairs. With
// distinct_opponents the matchings are cyclic shifts of one random
// alignment using distinct random offsets.
SchedulePlan SampleBalancedDuels(std::span<const std::string> group_a,
                                 std::span<const std::string> group_b,
                                 int duels_per_item, std::uint64_t seed,
                                 const ScheduleOptions& options = {});

// Kendall tau-b between two orderings of the same item set.
double KendallTau(std::span<const std::string> rank_a,
                  std::span<const std::string> rank_b);

// Kendall tau-b between paired observations, ties adjusted. O(n^2).
double KendallTauB(std::span<const double> xs, std::span<const double> ys);

struct RecoveryConfig {
  int n_items_per_group = 50;
  std::vector<int> budgets = {100, 200, 500, 1000, 2000};
  int replicates = 50;
  std::uint64_t seed = 0;
  // Latent log-qualities are drawn from N(0, quality_scale^2).
  double quality_scale = 1.0;
  ScheduleOptions schedule;
  FitConfig fit;
};

struct RecoveryCurve {
  std::vector<int> budgets;
  std::vector<double> mean_tau;
  std::vector<double> std_tau;
  // taus[b][r]: tau of replicate r at budget index b.
  std::vector<std::vector<double>> taus;
  int replicates = 0;
  std::uint64_t seed = 0;
};

// For each replicate r (seeded with seed + r), draws latent log-qualities
// once, then for every budget N schedules N / n_items_per_group duels per
// item, samples outcomes from the Bradley-Terry model, refits and records
// Kendall tau-b between true and fitted scores.
RecoveryCurve SimulateRankRecovery(const RecoveryConfig& config);

}  // namespace duelbias

#endif  // DUELBIAS_TOURNAMENT_H_
