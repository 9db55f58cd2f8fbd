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


// Command-line front end: simulation, tournament design, fitting, bias
// analysis, duel statistics, tag rankings and frequency comparison.
//
// Exit codes: 0 success, 2 invalid input or usage, 3 numerical failure.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "duelbias/bias.h"
#include "duelbias/dataset.h"
#include "duelbias/error.h"
#include "duelbias/pipeline.h"
#include "duelbias/report.h"
#include "duelbias/tags.h"
#include "duelbias/tournament.h"

namespace duelbias {
namespace {

namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitNumerical = 3;

struct GlobalOptions {
  std::string output_dir = ".";
  std::string columns;
};

struct SimulateOptions {
  int items = 100;
  std::vector<int> budgets = {100, 200, 500, 1000, 2000};
  int replicates = 50;
  std::optional<std::uint64_t> seed;
  double quality_scale = 1.0;
  double alpha = 0.1;
  bool distinct_opponents = false;
};

struct DesignOptions {
  std::string items;
  int duels_per_item = 0;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> categories;
  bool distinct_opponents = false;
};

// Shared by fit / bias / run.
struct AnalysisOptions {
  std::string items;
  std::string duels;
  std::string tags;
  std::vector<std::string> categories;
  std::vector<std::string> dimensions;
  int bootstrap = 1000;
  std::optional<std::uint64_t> seed;
  std::string unit = "item";
  std::string scale = "log";
  std::string focal = "B";
  double alpha = 0.1;
  std::string normalization = "geometric-mean-one";
  int max_iterations = 10000;
  double tolerance = 1e-8;
};

struct TagOptions {
  std::string items;
  std::string tags;
  std::size_t top_k = 10;
  long long min_count = 5;
  std::string count_mode = "mention";
  std::string stopwords;
  std::string lexicon;
  double smoothing = 0.5;
  bool continuity_correction = false;
  bool by_category = true;
};

struct DuelStatsOptions {
  std::string duels;
  std::string focal = "B";
};

struct FreqOptions {
  std::string items;
};

class OutputDir {
 public:
  explicit OutputDir(fs::path root) : root_(std::move(root)) {
    std::error_code ec;
    fs::create_directories(root_, ec);
    if (ec) {
      throw ValidationError("cannot create output directory " + root_.string() +
                            ": " + ec.message());
    }
  }

  template <typename Writer>
  void Write(const std::string& name, Writer&& writer) const {
    const fs::path path = root_ / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write " + path.string());
    writer(out);
    out.close();
    if (!out) throw ValidationError("failed writing " + path.string());
    std::cout << path.string() << '\n';
  }

 private:
  fs::path root_;
};

ColumnMapping LoadMapping(const GlobalOptions& global) {
  if (global.columns.empty()) return {};
  std::ifstream in(global.columns);
  if (!in) throw ValidationError("cannot open column mapping " + global.columns);
  return ColumnMapping::FromJson(in);
}

Group ParseFocal(const std::string& text) {
  const std::optional<Group> group = ParseGroup(text);
  if (!group) throw ValidationError("focal group must be A or B, got '" + text + "'");
  return *group;
}

AnalysisConfig MakeConfig(const AnalysisOptions& o) {
  AnalysisConfig config;
  config.categories = o.categories;
  config.dimensions = o.dimensions;
  config.bootstrap_replicates = o.bootstrap;
  config.seed = o.seed;
  config.unit = o.unit == "duel" ? ResampleUnit::kDuel : ResampleUnit::kItem;
  config.scale = o.scale == "raw" ? BiasScale::kRaw : BiasScale::kLog;
  config.focal = ParseFocal(o.focal);
  config.fit.regularization_alpha = o.alpha;
  config.fit.max_iterations = o.max_iterations;
  config.fit.tolerance = o.tolerance;
  config.fit.normalization = o.normalization == "sum-one"
                                 ? Normalization::kSumOne
                                 : Normalization::kGeometricMeanOne;
  return config;
}

void ApplyTagOptions(const TagOptions& o, AnalysisConfig& config) {
  config.tag_options.top_k = o.top_k;
  config.tag_options.min_count = o.min_count;
  config.tag_options.continuity_correction = o.continuity_correction;
  config.tag_count_mode = o.count_mode == "item" ? TagCountMode::kItem
                                                 : TagCountMode::kMention;
  config.tag_smoothing = o.smoothing;
  config.tags_by_category = o.by_category;
  if (!o.stopwords.empty()) {
    std::ifstream in(o.stopwords);
    if (!in) throw ValidationError("cannot open stopword list " + o.stopwords);
    config.tag_normalizer.stopword_prefixes = TagNormalizer::ReadStopwords(in);
  }
  if (!o.lexicon.empty()) {
    std::ifstream in(o.lexicon);
    if (!in) throw ValidationError("cannot open dash lexicon " + o.lexicon);
    config.tag_normalizer.dash_lexicon = TagNormalizer::ReadLexicon(in);
  }
}

// Input digests keyed by role, for provenance in every report.
std::map<std::string, std::string> Digests(
    const std::map<std::string, std::string>& inputs) {
  std::map<std::string, std::string> out;
  for (const auto& [role, path] : inputs) {
    if (!path.empty()) out[role] = "sha256:" + FileDigest(path);
  }
  return out;
}

void WriteBundleTables(const OutputDir& out, const ReportBundle& bundle,
                       const ItemCatalog& catalog) {
  out.Write("scores.csv", [&](std::ostream& s) {
    bool header = true;
    for (const auto& [key, result] : bundle.tournaments) {
      WriteScoresCsv(s, key.first, key.second, result.scores, catalog, header);
      header = false;
    }
  });
  bool any_bias = false;
  for (const auto& [key, result] : bundle.tournaments) any_bias |= result.bias.has_value();
  if (any_bias) {
    out.Write("rank_curves.csv", [&](std::ostream& s) {
      bool header = true;
      for (const auto& [key, result] : bundle.tournaments) {
        if (!result.bias) continue;
        WriteRankCurveCsv(s, *result.bias, header);
        header = false;
      }
    });
    out.Write("rater_histogram.csv", [&](std::ostream& s) {
      bool header = true;
      for (const auto& [dimension, pooled] : bundle.pooled) {
        WriteRaterHistogramCsv(s, dimension, pooled.raters, header);
        header = false;
      }
    });
  }
  if (!bundle.tags.empty()) {
    out.Write("tag_rankings.csv", [&](std::ostream& s) {
      bool header = true;
      for (const auto& [scope, tags] : bundle.tags) {
        WriteTagRankingsCsv(s, scope, tags, header);
        header = false;
      }
    });
  }
  if (bundle.frequency) {
    out.Write("frequency.csv",
              [&](std::ostream& s) { WriteFrequencyCsv(s, *bundle.frequency); });
  }
}

int RunSimulate(const GlobalOptions& global, const SimulateOptions& o) {
  if (!o.seed) throw ValidationError("simulate requires --seed");
  if (o.items < 4 || o.items % 2 != 0) {
    throw ValidationError("--items must be an even count of at least 4");
  }
  RecoveryConfig config;
  config.n_items_per_group = o.items / 2;
  config.budgets = o.budgets;
  config.replicates = o.replicates;
  config.seed = *o.seed;
  config.quality_scale = o.quality_scale;
  config.fit.regularization_alpha = o.alpha;
  config.schedule.distinct_opponents = o.distinct_opponents;
  const RecoveryCurve curve = SimulateRankRecovery(config);

  const OutputDir out(global.output_dir);
  out.Write("recovery_curve.csv",
            [&](std::ostream& s) { WriteRecoveryCurveCsv(s, curve); });
  nlohmann::json doc = {
      {"config",
       {{"items", o.items},
        {"budgets", o.budgets},
        {"replicates", o.replicates},
        {"seed", *o.seed},
        {"quality_scale", o.quality_scale},
        {"regularization_alpha", o.alpha},
        {"distinct_opponents", o.distinct_opponents}}},
      {"recovery", ToJson(curve)},
  };
  out.Write("recovery_curve.json", [&](std::ostream& s) { WriteJson(s, doc); });
  return kExitOk;
}

int RunDesign(const GlobalOptions& global, const DesignOptions& o) {
  if (!o.seed) throw ValidationError("design requires --seed");
  const ItemCatalog catalog = ParseItems(fs::path(o.items), LoadMapping(global));
  ScheduleOptions options;
  options.distinct_opponents = o.distinct_opponents;
  std::vector<std::pair<std::string, SchedulePlan>> plans;
  for (const std::string& category : catalog.Categories()) {
    if (!o.categories.empty() &&
        std::find(o.categories.begin(), o.categories.end(), category) ==
            o.categories.end()) {
      continue;
    }
    std::vector<std::string> a, b;
    for (const ItemRecord& item : catalog.items()) {
      if (item.category != category) continue;
      (item.group == Group::kA ? a : b).push_back(item.item_id);
    }
    try {
      plans.emplace_back(category,
                         SampleBalancedDuels(a, b, o.duels_per_item,
                                             TournamentSeed(*o.seed, category, ""),
                                             options));
    } catch (const Error& e) {
      ThrowError(e.kind(), category + ": " + e.what());
    }
  }
  if (plans.empty()) throw ValidationError("no category selected");
  const OutputDir out(global.output_dir);
  out.Write("schedule.csv", [&](std::ostream& s) {
    bool header = true;
    for (const auto& [category, plan] : plans) {
      WriteScheduleCsv(s, category, plan, header);
      header = false;
    }
  });
  return kExitOk;
}

int RunAnalysis(const GlobalOptions& global, AnalysisOptions o,
                const TagOptions* tag_options, const std::string& report_name) {
  const ColumnMapping mapping = LoadMapping(global);
  const ItemCatalog catalog = ParseItems(fs::path(o.items), mapping);
  const std::vector<DuelRecord> duels =
      ParseDuels(fs::path(o.duels), &catalog, mapping);
  std::vector<TagRecord> tags;
  AnalysisConfig config = MakeConfig(o);
  if (tag_options != nullptr) {
    ApplyTagOptions(*tag_options, config);
    if (!o.tags.empty()) tags = ParseTags(fs::path(o.tags), &catalog, mapping);
  }
  const ReportBundle bundle = RunPipeline(config, catalog, duels, tags);
  if (bundle.tournaments.empty()) {
    throw ValidationError("no duels match the selected categories and dimensions");
  }
  const auto digests = Digests({{"items", o.items}, {"duels", o.duels}, {"tags", o.tags}});
  const OutputDir out(global.output_dir);
  WriteBundleTables(out, bundle, catalog);
  out.Write(report_name, [&](std::ostream& s) {
    WriteJson(s, BundleToJson(bundle, config, digests));
  });
  return kExitOk;
}

int RunDuelStats(const GlobalOptions& global, const DuelStatsOptions& o) {
  const std::vector<DuelRecord> duels =
      ParseDuels(fs::path(o.duels), nullptr, LoadMapping(global));
  if (duels.empty()) throw ValidationError("duel file has no rows");
  const Group focal = ParseFocal(o.focal);
  std::map<std::string, std::vector<DuelRecord>> by_dimension;
  for (const DuelRecord& duel : duels) by_dimension[duel.dimension].push_back(duel);

  nlohmann::json dims = nlohmann::json::object();
  std::map<std::string, RaterMacroAverage> raters;
  for (const auto& [dimension, records] : by_dimension) {
    raters[dimension] = ComputeRaterMacroAverage(records, focal);
    dims[dimension] = {{"win_fraction", ToJson(DuelWinFraction(records, focal))},
                       {"raters", ToJson(raters[dimension])}};
  }
  const nlohmann::json doc = {
      {"config", {{"focal_group", std::string(GroupName(focal))}}},
      {"inputs", Digests({{"duels", o.duels}})},
      {"dimensions", dims},
  };
  const OutputDir out(global.output_dir);
  out.Write("duelstats.json", [&](std::ostream& s) { WriteJson(s, doc); });
  out.Write("rater_histogram.csv", [&](std::ostream& s) {
    bool header = true;
    for (const auto& [dimension, r] : raters) {
      WriteRaterHistogramCsv(s, dimension, r, header);
      header = false;
    }
  });
  return kExitOk;
}

int RunTags(const GlobalOptions& global, const TagOptions& o) {
  const ColumnMapping mapping = LoadMapping(global);
  const ItemCatalog catalog = ParseItems(fs::path(o.items), mapping);
  const std::vector<TagRecord> tags = ParseTags(fs::path(o.tags), &catalog, mapping);
  AnalysisConfig config;
  config.bootstrap_replicates = 0;
  ApplyTagOptions(o, config);
  ReportBundle bundle = RunPipeline(config, catalog, {}, tags);
  if (bundle.tags.empty()) throw ValidationError("tags cover only one group");

  nlohmann::json rankings = nlohmann::json::object();
  for (const auto& [scope, ranked] : bundle.tags) rankings[scope] = ToJson(ranked);
  const nlohmann::json doc = {
      {"config", config.Echo()["tags"]},
      {"inputs", Digests({{"items", o.items}, {"tags", o.tags}})},
      {"tags", rankings},
  };
  const OutputDir out(global.output_dir);
  out.Write("tags.json", [&](std::ostream& s) { WriteJson(s, doc); });
  out.Write("tag_rankings.csv", [&](std::ostream& s) {
    bool header = true;
    for (const auto& [scope, ranked] : bundle.tags) {
      WriteTagRankingsCsv(s, scope, ranked, header);
      header = false;
    }
  });
  return kExitOk;
}

int RunFreq(const GlobalOptions& global, const FreqOptions& o) {
  const ItemCatalog catalog = ParseItems(fs::path(o.items), LoadMapping(global));
  const FrequencyComparison freq = FrequencyDivergence(catalog);
  const nlohmann::json doc = {{"inputs", Digests({{"items", o.items}})},
                              {"frequency", ToJson(freq)}};
  const OutputDir out(global.output_dir);
  out.Write("frequency.json", [&](std::ostream& s) { WriteJson(s, doc); });
  out.Write("frequency.csv", [&](std::ostream& s) { WriteFrequencyCsv(s, freq); });
  return kExitOk;
}

void AddFitOptions(CLI::App* cmd, AnalysisOptions& o) {
  cmd->add_option("--items", o.items, "Item catalog CSV")->required()->check(CLI::ExistingFile);
  cmd->add_option("--duels", o.duels, "Duel records CSV")->required()->check(CLI::ExistingFile);
  cmd->add_option("--category", o.categories, "Restrict to these categories");
  cmd->add_option("--dimension", o.dimensions, "Restrict to these dimensions");
  cmd->add_option("--alpha", o.alpha, "Regularization pseudo-count (0 disables)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--normalization", o.normalization, "Score gauge")
      ->check(CLI::IsMember({"geometric-mean-one", "sum-one"}));
  cmd->add_option("--max-iterations", o.max_iterations)->check(CLI::PositiveNumber);
  cmd->add_option("--tolerance", o.tolerance)->check(CLI::PositiveNumber);
}

void AddBiasOptions(CLI::App* cmd, AnalysisOptions& o) {
  cmd->add_option("--bootstrap", o.bootstrap, "Bootstrap replicates (>= 100)")
      ->check(CLI::Range(100, 1000000));
  cmd->add_option("--seed", o.seed, "Random seed");
  cmd->add_option("--unit", o.unit, "Bootstrap resampling unit")
      ->check(CLI::IsMember({"item", "duel"}));
  cmd->add_option("--scale", o.scale, "Score scale for the bias statistic")
      ->check(CLI::IsMember({"log", "raw"}));
  cmd->add_option("--focal", o.focal, "Group whose win fraction is reported")
      ->check(CLI::IsMember({"A", "B"}));
}

void AddTagOptions(CLI::App* cmd, TagOptions& o) {
  cmd->add_option("--top-k", o.top_k, "Tags listed per direction")->check(CLI::PositiveNumber);
  cmd->add_option("--min-count", o.min_count, "Minimum combined count")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--count-mode", o.count_mode, "Count every mention or once per item")
      ->check(CLI::IsMember({"mention", "item"}));
  cmd->add_option("--stopwords", o.stopwords, "Leading stopword list")
      ->check(CLI::ExistingFile);
  cmd->add_option("--lexicon", o.lexicon, "Dash-merge lexicon (TSV)")
      ->check(CLI::ExistingFile);
  cmd->add_option("--smoothing", o.smoothing, "Additive smoothing epsilon")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--continuity-correction", o.continuity_correction,
                "Apply Yates' correction to the chi-square test");
  cmd->add_flag("!--no-by-category", o.by_category, "Skip per-category rankings");
}

int Main(int argc, char** argv) {
  CLI::App app{"Pairwise-duel bias analysis"};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML/INI file supplying option defaults");
  GlobalOptions global;
  app.add_option("--output-dir", global.output_dir, "Directory for reports")
      ->envname("DUELBIAS_OUTPUT_DIR");
  app.add_option("--columns", global.columns, "JSON column-mapping file")
      ->check(CLI::ExistingFile);

  SimulateOptions sim;
  CLI::App* simulate = app.add_subcommand("simulate", "Rank-recovery simulation");
  simulate->add_option("--items", sim.items, "Total items, split evenly between groups");
  simulate->add_option("--budgets", sim.budgets, "Total duel budgets")->delimiter(',');
  simulate->add_option("--replicates", sim.replicates)->check(CLI::PositiveNumber);
  simulate->add_option("--seed", sim.seed, "Random seed");
  simulate->add_option("--quality-scale", sim.quality_scale,
                       "Standard deviation of latent log-qualities")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--alpha", sim.alpha)->check(CLI::NonNegativeNumber);
  simulate->add_flag("--distinct-opponents", sim.distinct_opponents);

  DesignOptions design;
  CLI::App* design_cmd = app.add_subcommand("design", "Balanced duel schedule");
  design_cmd->add_option("--items", design.items)->required()->check(CLI::ExistingFile);
  design_cmd->add_option("--duels-per-item", design.duels_per_item)
      ->required()
      ->check(CLI::PositiveNumber);
  design_cmd->add_option("--seed", design.seed, "Random seed");
  design_cmd->add_option("--category", design.categories);
  design_cmd->add_flag("--distinct-opponents", design.distinct_opponents);

  AnalysisOptions fit_opts;
  fit_opts.bootstrap = 0;
  CLI::App* fit = app.add_subcommand("fit", "Fit per-tournament scores");
  AddFitOptions(fit, fit_opts);

  AnalysisOptions bias_opts;
  CLI::App* bias = app.add_subcommand("bias", "Score bias, rank curves and bounds");
  AddFitOptions(bias, bias_opts);
  AddBiasOptions(bias, bias_opts);

  AnalysisOptions run_opts;
  TagOptions run_tags;
  CLI::App* run = app.add_subcommand("run", "Full pipeline with one combined report");
  AddFitOptions(run, run_opts);
  AddBiasOptions(run, run_opts);
  run->add_option("--tags", run_opts.tags, "Tag records CSV")->check(CLI::ExistingFile);
  AddTagOptions(run, run_tags);

  DuelStatsOptions stats;
  CLI::App* duelstats = app.add_subcommand("duelstats", "Win fractions and rater averages");
  duelstats->add_option("--duels", stats.duels)->required()->check(CLI::ExistingFile);
  duelstats->add_option("--focal", stats.focal)->check(CLI::IsMember({"A", "B"}));

  TagOptions tag_opts;
  CLI::App* tags = app.add_subcommand("tags", "Distinctive tag rankings");
  tags->add_option("--items", tag_opts.items)->required()->check(CLI::ExistingFile);
  tags->add_option("--tags", tag_opts.tags)->required()->check(CLI::ExistingFile);
  AddTagOptions(tags, tag_opts);

  FreqOptions freq_opts;
  CLI::App* freq = app.add_subcommand("freq", "Category frequency comparison");
  freq->add_option("--items", freq_opts.items)->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*simulate) return RunSimulate(global, sim);
    if (*design_cmd) return RunDesign(global, design);
    if (*fit) return RunAnalysis(global, fit_opts, nullptr, "fit.json");
    if (*bias) return RunAnalysis(global, bias_opts, nullptr, "bias.json");
    if (*run) return RunAnalysis(global, run_opts, &run_tags, "report.json");
    if (*duelstats) return RunDuelStats(global, stats);
    if (*tags) return RunTags(global, tag_opts);
    if (*freq) return RunFreq(global, freq_opts);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::kNumerical ? kExitNumerical : kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitInvalid;
}

}  // namespace
}  // namespace duelbias

int main(int argc, char** argv) { return duelbias::Main(argc, argv); }
