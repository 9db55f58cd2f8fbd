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


// End-to-end analysis: one Bradley-Terry fit and bias report per
// (category, dimension) tournament, pooled summaries per dimension,
// cross-dimension correlations, category frequencies and tag rankings.

#ifndef DUELBIAS_PIPELINE_H_
#define DUELBIAS_PIPELINE_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "duelbias/bias.h"
#include "duelbias/catalog.h"
#include "duelbias/tags.h"

namespace duelbias {

struct AnalysisConfig {
  // Empty means every dimension / category present in the duels.
  std::vector<std::string> dimensions;
  std::vector<std::string> categories;
  int bootstrap_replicates = 1000;
  // Required whenever bootstrap_replicates > 0.
  std::optional<std::uint64_t> seed;
  ResampleUnit unit = ResampleUnit::kItem;
  BiasScale scale = BiasScale::kLog;
  FitConfig fit;
  Group focal = Group::kB;
  std::vector<double> rank_grid = DefaultRankGrid();

  DistinctiveTagsOptions tag_options;
  TagCountMode tag_count_mode = TagCountMode::kMention;
  double tag_smoothing = 0.5;
  TagNormalizer tag_normalizer = TagNormalizer::Default();
  bool tags_by_category = true;

  nlohmann::json Echo() const;
};

struct TournamentResult {
  ScoreTable scores;
  // Absent when the pipeline runs without a bootstrap.
  std::optional<TournamentBias> bias;
};

struct ReportBundle {
  // Keyed by (category, dimension).
  std::map<std::pair<std::string, std::string>, TournamentResult> tournaments;
  std::map<std::string, PooledBias> pooled;
  std::optional<CorrelationMatrix> correlations;
  std::string correlations_note;
  std::optional<FrequencyComparison> frequency;
  std::string frequency_note;
  // "overall" plus one entry per category when tags are given.
  std::map<std::string, DistinctiveTags> tags;
};

// Seed for one tournament's bootstrap, derived from the run seed and the
// tournament key so results do not depend on processing order.
std::uint64_t TournamentSeed(std::uint64_t seed, const std::string& category,
                             const std::string& dimension);

// Errors raised inside a tournament are rethrown with the
// "category/dimension" context prefixed, keeping their ErrorKind.
ReportBundle RunPipeline(const AnalysisConfig& config, const ItemCatalog& catalog,
                         std::span<const DuelRecord> duels,
                         std::span<const TagRecord> tags = {});

// Full JSON report: results plus the config echo and input digests.
nlohmann::json BundleToJson(const ReportBundle& bundle,
                            const AnalysisConfig& config,
                            const std::map<std::string, std::string>& digests);

}  // namespace duelbias

#endif  // DUELBIAS_PIPELINE_H_
