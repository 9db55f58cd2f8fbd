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


#include "duelbias/pipeline.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "duelbias/error.h"
#include "duelbias/report.h"

namespace duelbias {
namespace {

const char* UnitName(ResampleUnit unit) {
  return unit == ResampleUnit::kDuel ? "duel" : "item";
}

template <typename Fn>
auto WithContext(const std::string& context, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    ThrowError(e.kind(), context + ": " + e.what());
  }
}

bool Selected(const std::vector<std::string>& filter, const std::string& value) {
  return filter.empty() ||
         std::find(filter.begin(), filter.end(), value) != filter.end();
}

}  // namespace

nlohmann::json AnalysisConfig::Echo() const {
  nlohmann::json lexicon = tag_normalizer.dash_lexicon;
  return {
      {"dimensions", dimensions},
      {"categories", categories},
      {"bootstrap_replicates", bootstrap_replicates},
      {"seed", seed ? nlohmann::json(*seed) : nlohmann::json(nullptr)},
      {"unit", UnitName(unit)},
      {"scale", scale == BiasScale::kLog ? "log" : "raw"},
      {"fit",
       {{"max_iterations", fit.max_iterations},
        {"tolerance", fit.tolerance},
        {"regularization_alpha", fit.regularization_alpha},
        {"normalization", fit.normalization == Normalization::kSumOne
                              ? "sum-one"
                              : "geometric-mean-one"}}},
      {"focal_group", std::string(GroupName(focal))},
      {"rank_grid", rank_grid},
      {"tags",
       {{"top_k", tag_options.top_k},
        {"min_count", tag_options.min_count},
        {"continuity_correction", tag_options.continuity_correction},
        {"count_mode", tag_count_mode == TagCountMode::kItem ? "item" : "mention"},
        {"smoothing", tag_smoothing},
        {"stopword_prefixes", tag_normalizer.stopword_prefixes},
        {"dash_lexicon", lexicon},
        {"by_category", tags_by_category}}},
  };
}

std::uint64_t TournamentSeed(std::uint64_t seed, const std::string& category,
                             const std::string& dimension) {
  std::vector<std::uint32_t> material = {
      static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  for (unsigned char c : category) material.push_back(c);
  material.push_back(0x100);  // separator outside the byte range
  for (unsigned char c : dimension) material.push_back(c);
  std::seed_seq seq(material.begin(), material.end());
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

ReportBundle RunPipeline(const AnalysisConfig& config, const ItemCatalog& catalog,
                         std::span<const DuelRecord> duels,
                         std::span<const TagRecord> tags) {
  const bool bootstrap = config.bootstrap_replicates > 0;
  if (bootstrap && !config.seed) {
    throw ValidationError("a seed is required when bootstrapping");
  }
  config.fit.Validate();

  // Referential checks before any fitting.
  std::set<std::string> known_categories;
  for (const ItemRecord& item : catalog.items()) known_categories.insert(item.category);
  std::map<std::pair<std::string, std::string>, std::vector<DuelRecord>> grouped;
  for (const DuelRecord& duel : duels) {
    if (!known_categories.contains(duel.category)) {
      throw ReferentialError("category '" + duel.category +
                             "' has duels but no catalog items");
    }
    for (const std::string* id : {&duel.item_a, &duel.item_b}) {
      if (catalog.Find(*id) == nullptr) {
        throw ReferentialError("duel " + duel.duel_id + " references unknown item " + *id);
      }
    }
    if (!Selected(config.categories, duel.category) ||
        !Selected(config.dimensions, duel.dimension)) {
      continue;
    }
    grouped[{duel.category, duel.dimension}].push_back(duel);
  }

  BiasOptions options;
  options.scale = config.scale;
  options.unit = config.unit;
  options.grid = config.rank_grid;
  options.fit = config.fit;
  options.focal = config.focal;
  options.bootstrap.replicates = config.bootstrap_replicates;

  ReportBundle bundle;
  std::map<std::string, std::vector<TournamentAnalysis>> by_dimension;
  std::map<std::string, std::vector<DuelRecord>> dimension_duels;
  for (const auto& [key, tournament_duels] : grouped) {
    const auto& [category, dimension] = key;
    const std::string context = category + "/" + dimension;
    TournamentResult result;
    if (bootstrap) {
      BiasOptions local = options;
      local.bootstrap.seed = TournamentSeed(*config.seed, category, dimension);
      TournamentAnalysis analysis = WithContext(context, [&] {
        return AnalyzeTournament(tournament_duels, catalog, local);
      });
      result.scores = analysis.scores;
      result.bias = analysis.bias;
      by_dimension[dimension].push_back(std::move(analysis));
    } else {
      result.scores = WithContext(context, [&] {
        std::set<std::string> ids;
        std::vector<std::pair<std::string, std::string>> outcomes;
        for (const DuelRecord& duel : tournament_duels) {
          ids.insert(duel.item_a);
          ids.insert(duel.item_b);
          outcomes.emplace_back(duel.WinnerId(), duel.LoserId());
        }
        return Fit(ComparisonGraph::FromOutcomes({ids.begin(), ids.end()}, outcomes),
                   config.fit);
      });
    }
    auto& dim = dimension_duels[dimension];
    dim.insert(dim.end(), tournament_duels.begin(), tournament_duels.end());
    bundle.tournaments.emplace(key, std::move(result));
  }

  for (const auto& [dimension, analyses] : by_dimension) {
    bundle.pooled.emplace(dimension, WithContext(dimension, [&] {
      return PoolTournaments(analyses, dimension_duels.at(dimension), options);
    }));
  }

  // Correlations between dimensions over all fitted items.
  std::map<std::string, DimensionScores> per_dimension;
  for (const auto& [key, result] : bundle.tournaments) {
    DimensionScores& dim = per_dimension[key.second];
    dim.dimension = key.second;
    for (std::size_t i = 0; i < result.scores.item_ids.size(); ++i) {
      dim.item_ids.push_back(result.scores.item_ids[i]);
      dim.scores.push_back(config.scale == BiasScale::kLog
                               ? std::log(result.scores.scores[i])
                               : result.scores.scores[i]);
    }
  }
  if (per_dimension.size() >= 2) {
    std::vector<DimensionScores> dims;
    for (auto& [name, dim] : per_dimension) dims.push_back(std::move(dim));
    try {
      bundle.correlations = ScoreCorrelations(dims);
    } catch (const DomainError& e) {
      bundle.correlations_note = e.what();
    }
  } else {
    bundle.correlations_note = "fewer than two dimensions";
  }

  try {
    bundle.frequency = FrequencyDivergence(catalog);
  } catch (const DomainError& e) {
    bundle.frequency_note = e.what();
  }

  if (!tags.empty()) {
    const auto rank = [&](std::string_view category) {
      const GroupTagDistributions dists = BuildTagDistributions(
          tags, catalog, config.tag_normalizer, config.tag_count_mode,
          config.tag_smoothing, category);
      if (dists.a.total() == 0 || dists.b.total() == 0) {
        return std::optional<DistinctiveTags>();
      }
      return std::optional<DistinctiveTags>(
          RankDistinctiveTags(dists.a, dists.b, config.tag_options));
    };
    if (auto overall = WithContext("tags", [&] { return rank({}); })) {
      bundle.tags.emplace("overall", std::move(*overall));
    }
    if (config.tags_by_category) {
      for (const std::string& category : catalog.Categories()) {
        if (!Selected(config.categories, category)) continue;
        if (auto ranked = WithContext("tags/" + category, [&] { return rank(category); })) {
          bundle.tags.emplace("category:" + category, std::move(*ranked));
        }
      }
    }
  }
  return bundle;
}

nlohmann::json BundleToJson(const ReportBundle& bundle,
                            const AnalysisConfig& config,
                            const std::map<std::string, std::string>& digests) {
  nlohmann::json tournaments = nlohmann::json::array();
  for (const auto& [key, result] : bundle.tournaments) {
    nlohmann::json entry = {{"category", key.first},
                            {"dimension", key.second},
                            {"fit", ToJson(result.scores)}};
    entry["bias"] = result.bias ? ToJson(*result.bias) : nlohmann::json(nullptr);
    tournaments.push_back(std::move(entry));
  }
  nlohmann::json pooled = nlohmann::json::object();
  for (const auto& [dimension, p] : bundle.pooled) pooled[dimension] = ToJson(p);
  nlohmann::json tags = nlohmann::json::object();
  for (const auto& [scope, t] : bundle.tags) tags[scope] = ToJson(t);

  nlohmann::json doc = {
      {"config", config.Echo()},
      {"inputs", digests},
      {"tournaments", tournaments},
      {"pooled", pooled},
      {"tags", tags},
  };
  doc["correlations"] = bundle.correlations ? ToJson(*bundle.correlations)
                                            : nlohmann::json(nullptr);
  doc["correlations_note"] = bundle.correlations_note;
  doc["frequency"] =
      bundle.frequency ? ToJson(*bundle.frequency) : nlohmann::json(nullptr);
  doc["frequency_note"] = bundle.frequency_note;
  return doc;
}

}  // namespace duelbias
