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


// Percentile bootstrap over records, optionally stratified.

#ifndef DUELBIAS_BOOTSTRAP_H_
#define DUELBIAS_BOOTSTRAP_H_

#include <cstdint>
#include <exception>
#include <map>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "duelbias/error.h"
#include "duelbias/stats.h"

namespace duelbias {

enum class ResampleUnit { kDuel, kItem };

struct BootstrapOptions {
  int replicates = 1000;
  std::uint64_t seed = 0;
  double confidence = 0.95;
  // Largest tolerated fraction of replicates on which the statistic threw.
  double max_discard_fraction = 0.10;
};

struct Interval {
  double point = 0.0;
  double low = 0.0;
  double high = 0.0;
};

// Replicate draws of a vector-valued statistic. draws[r] is empty for a
// discarded replicate, so indices stay aligned across analyses that share a
// replicate count.
struct BootstrapDistribution {
  std::vector<double> point;
  std::vector<std::vector<double>> draws;
  int discarded = 0;

  // Percentile interval of coordinate `k` over the kept replicates.
  Interval Summarize(std::size_t k, double confidence) const;
};

namespace bootstrap_internal {

void CheckOptions(const BootstrapOptions& options);
// Throws NumericalError when too many replicates were discarded.
void CheckDiscards(const BootstrapDistribution& dist,
                   const BootstrapOptions& options);

}  // namespace bootstrap_internal

// Resamples records with replacement (within each stratum when `strata` is
// non-empty, keeping stratum sizes) and evaluates `statistic` on each
// resample. `statistic` maps a std::vector<Record> to std::vector<double>.
// A replicate whose statistic throws duelbias::Error is discarded.
template <typename Record, typename Statistic>
BootstrapDistribution ResampleStatistic(std::span<const Record> records,
                                        Statistic&& statistic,
                                        const BootstrapOptions& options,
                                        std::span<const int> strata = {}) {
  bootstrap_internal::CheckOptions(options);
  if (records.empty()) throw DomainError("bootstrap over an empty record set");
  if (!strata.empty() && strata.size() != records.size()) {
    throw DomainError("strata labels do not match the records");
  }
  std::map<int, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < records.size(); ++i) {
    groups[strata.empty() ? 0 : strata[i]].push_back(i);
  }

  BootstrapDistribution dist;
  dist.point = statistic(std::vector<Record>(records.begin(), records.end()));
  dist.draws.resize(options.replicates);
  std::mt19937_64 rng(options.seed);
  std::vector<Record> sample;
  sample.reserve(records.size());
  for (int r = 0; r < options.replicates; ++r) {
    sample.clear();
    for (const auto& [label, members] : groups) {
      std::uniform_int_distribution<std::size_t> pick(0, members.size() - 1);
      for (std::size_t i = 0; i < members.size(); ++i) {
        sample.push_back(records[members[pick(rng)]]);
      }
    }
    try {
      dist.draws[r] = statistic(sample);
      if (dist.draws[r].size() != dist.point.size()) {
        throw NumericalError("statistic changed dimension across replicates");
      }
    } catch (const Error&) {
      dist.draws[r].clear();
      ++dist.discarded;
    }
  }
  bootstrap_internal::CheckDiscards(dist, options);
  return dist;
}

// Scalar convenience form returning the point estimate and the percentile
// interval at options.confidence.
template <typename Record, typename Statistic>
Interval BootstrapCi(std::span<const Record> records, Statistic&& statistic,
                     const BootstrapOptions& options,
                     std::span<const int> strata = {}) {
  const BootstrapDistribution dist = ResampleStatistic<Record>(
      records,
      [&](const std::vector<Record>& sample) {
        return std::vector<double>{statistic(sample)};
      },
      options, strata);
  return dist.Summarize(0, options.confidence);
}

}  // namespace duelbias

#endif  // DUELBIAS_BOOTSTRAP_H_
