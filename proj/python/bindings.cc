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


// Python bindings for the duelbias core.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "duelbias/bias.h"
#include "duelbias/choice_model.h"
#include "duelbias/dataset.h"
#include "duelbias/error.h"
#include "duelbias/pipeline.h"
#include "duelbias/report.h"
#include "duelbias/stats.h"
#include "duelbias/tags.h"
#include "duelbias/tournament.h"

namespace py = pybind11;

namespace duelbias {
namespace {

py::dict ScoreTableToDict(const ScoreTable& table) {
  py::dict scores;
  for (std::size_t i = 0; i < table.item_ids.size(); ++i) {
    scores[py::str(table.item_ids[i])] = table.scores[i];
  }
  py::dict out;
  out["scores"] = scores;
  out["log_likelihood"] = table.log_likelihood;
  out["iterations"] = table.iterations;
  out["converged"] = table.converged;
  out["regularization"] = table.regularization;
  out["normalization"] = table.normalization == Normalization::kSumOne
                             ? "sum-one"
                             : "geometric-mean-one";
  return out;
}

FitConfig MakeFitConfig(double alpha, int max_iterations, double tolerance,
                        const std::string& normalization) {
  FitConfig config;
  config.regularization_alpha = alpha;
  config.max_iterations = max_iterations;
  config.tolerance = tolerance;
  if (normalization == "sum-one") {
    config.normalization = Normalization::kSumOne;
  } else if (normalization == "geometric-mean-one") {
    config.normalization = Normalization::kGeometricMeanOne;
  } else {
    throw DomainError("unknown normalization '" + normalization + "'");
  }
  return config;
}

py::dict PyFit(const std::vector<std::string>& item_ids,
             const std::vector<std::pair<std::string, std::string>>& outcomes,
             double alpha, int max_iterations, double tolerance,
             const std::string& normalization) {
  const ComparisonGraph graph = ComparisonGraph::FromOutcomes(item_ids, outcomes);
  return ScoreTableToDict(
      duelbias::Fit(graph, MakeFitConfig(alpha, max_iterations, tolerance, normalization)));
}

std::vector<std::string> PyRankItems(const std::map<std::string, double>& scores) {
  ScoreTable table;
  for (const auto& [id, score] : scores) {
    table.item_ids.push_back(id);
    table.scores.push_back(score);
  }
  return RankItems(table);
}

py::dict PySimulateRankRecovery(int n_items_per_group, const std::vector<int>& budgets,
                          int replicates, std::uint64_t seed, double quality_scale,
                          double alpha) {
  RecoveryConfig config;
  config.n_items_per_group = n_items_per_group;
  config.budgets = budgets;
  config.replicates = replicates;
  config.seed = seed;
  config.quality_scale = quality_scale;
  config.fit.regularization_alpha = alpha;
  const RecoveryCurve curve = SimulateRankRecovery(config);
  py::dict out;
  out["budgets"] = curve.budgets;
  out["mean_tau"] = curve.mean_tau;
  out["std_tau"] = curve.std_tau;
  out["taus"] = curve.taus;
  return out;
}

py::dict PValueToDict(const PValue& p) {
  py::dict out;
  out["value"] = p.value();
  out["log10"] = p.log10();
  return out;
}

py::dict PyDistinctiveTags(const std::map<std::string, long long>& counts_a,
                                   const std::map<std::string, long long>& counts_b,
                                   std::size_t top_k, long long min_count,
                                   double smoothing, bool continuity_correction) {
  TagDistribution a(smoothing), b(smoothing);
  for (const auto& [tag, count] : counts_a) a.Add(tag, count);
  for (const auto& [tag, count] : counts_b) b.Add(tag, count);
  DistinctiveTagsOptions options;
  options.top_k = top_k;
  options.min_count = min_count;
  options.continuity_correction = continuity_correction;
  const DistinctiveTags ranked = RankDistinctiveTags(a, b, options);
  const auto rows = [](const std::vector<DistinctiveTag>& list) {
    py::list out;
    for (const DistinctiveTag& t : list) {
      py::dict row;
      row["tag"] = t.tag;
      row["kl"] = t.kl;
      row["count_target"] = t.count_target;
      row["count_reference"] = t.count_reference;
      row["chi_square"] = t.chi_square;
      row["p"] = t.p.value();
      row["stars"] = t.stars;
      out.append(row);
    }
    return out;
  };
  py::dict out;
  out["typical_a"] = rows(ranked.typical_a);
  out["typical_b"] = rows(ranked.typical_b);
  return out;
}

// Runs the full pipeline on CSV inputs and returns the JSON report text.
std::string PyRunPipelineJson(const std::string& items_path,
                            const std::string& duels_path,
                            const std::optional<std::string>& tags_path,
                            int bootstrap, std::optional<std::uint64_t> seed,
                            const std::string& unit, const std::string& scale,
                            double alpha) {
  const ItemCatalog catalog = ParseItems(std::filesystem::path(items_path));
  const std::vector<DuelRecord> duels =
      ParseDuels(std::filesystem::path(duels_path), &catalog);
  std::vector<TagRecord> tags;
  if (tags_path) tags = ParseTags(std::filesystem::path(*tags_path), &catalog);
  AnalysisConfig config;
  config.bootstrap_replicates = bootstrap;
  config.seed = seed;
  if (unit != "item" && unit != "duel") throw DomainError("unit must be 'item' or 'duel'");
  if (scale != "log" && scale != "raw") throw DomainError("scale must be 'log' or 'raw'");
  config.unit = unit == "duel" ? ResampleUnit::kDuel : ResampleUnit::kItem;
  config.scale = scale == "raw" ? BiasScale::kRaw : BiasScale::kLog;
  config.fit.regularization_alpha = alpha;
  const ReportBundle bundle = RunPipeline(config, catalog, duels, tags);
  std::map<std::string, std::string> digests = {
      {"items", "sha256:" + FileDigest(items_path)},
      {"duels", "sha256:" + FileDigest(duels_path)}};
  if (tags_path) digests["tags"] = "sha256:" + FileDigest(*tags_path);
  return BundleToJson(bundle, config, digests).dump(2);
}

}  // namespace
}  // namespace duelbias

PYBIND11_MODULE(_core, m) {
  using namespace duelbias;
  m.doc() = "Bradley-Terry duel analysis: fitting, bias statistics and tag rankings";

  // Translators run most-recent first, so the subclass is registered last.
  const auto& base = py::register_exception<Error>(m, "DuelbiasError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", base.ptr());

  m.def("win_probability", &WinProbability, py::arg("score_a"), py::arg("score_b"),
        "Pr(a beats b) = s_a / (s_a + s_b).");
  m.def("fit", &PyFit, py::arg("item_ids"), py::arg("outcomes"),
        py::arg("alpha") = 0.1, py::arg("max_iterations") = 10000,
        py::arg("tolerance") = 1e-8, py::arg("normalization") = "geometric-mean-one",
        "Fit Bradley-Terry scores to (winner, loser) outcomes.");
  m.def("rank_items", &PyRankItems, py::arg("scores"),
        "Item ids by descending score, ties by ascending id.");
  m.def(
      "kendall_tau",
      [](const std::vector<std::string>& a, const std::vector<std::string>& b) {
        return KendallTau(a, b);
      },
      py::arg("rank_a"), py::arg("rank_b"));
  m.def(
      "sample_balanced_duels",
      [](const std::vector<std::string>& a, const std::vector<std::string>& b, int k,
         std::uint64_t seed, bool distinct) {
        ScheduleOptions options;
        options.distinct_opponents = distinct;
        return SampleBalancedDuels(a, b, k, seed, options).pairs;
      },
      py::arg("group_a"), py::arg("group_b"), py::arg("duels_per_item"), py::arg("seed"),
      py::arg("distinct_opponents") = false);
  m.def("simulate_rank_recovery", &PySimulateRankRecovery, py::arg("n_items_per_group") = 50,
        py::arg("budgets") = std::vector<int>{100, 200, 500, 1000, 2000},
        py::arg("replicates") = 50, py::arg("seed") = 0, py::arg("quality_scale") = 1.0,
        py::arg("alpha") = 0.1);
  m.def(
      "binomial_two_sided",
      [](long long k, long long n, double p0) { return PValueToDict(BinomialTwoSided(k, n, p0)); },
      py::arg("k"), py::arg("n"), py::arg("p0") = 0.5);
  m.def(
      "chi_square_2x2",
      [](const std::array<std::array<double, 2>, 2>& table, bool yates) {
        const ChiSquareResult r = ChiSquare2x2(table, yates);
        py::dict out;
        out["statistic"] = r.statistic;
        out["p"] = PValueToDict(r.p);
        return out;
      },
      py::arg("table"), py::arg("continuity_correction") = false);
  using Vec = std::vector<double>;
  m.def(
      "percentile_rank", [](double value, const Vec& sample) { return PercentileRank(value, sample); },
      py::arg("value"), py::arg("sample"));
  m.def(
      "score_bias", [](const Vec& a, const Vec& b) { return ScoreBias(a, b); },
      py::arg("scores_a"), py::arg("scores_b"));
  m.def(
      "median_percentile_rank",
      [](const Vec& a, const Vec& b) { return MedianPercentileRank(a, b); },
      py::arg("scores_a"), py::arg("scores_b"));
  m.def(
      "rank_curve",
      [](const Vec& a, const Vec& b, const Vec& grid) { return RankCurve(a, b, grid); },
      py::arg("scores_a"), py::arg("scores_b"), py::arg("grid") = DefaultRankGrid());
  m.def(
      "triangle_lower_bound",
      [](double bias, double low, double high) {
        const TriangleBound t = TriangleLowerBound(bias, low, high);
        return std::make_tuple(t.bound, t.low, t.high);
      },
      py::arg("bias"), py::arg("low"), py::arg("high"));
  m.def(
      "normalize_tag",
      [](const std::string& raw) { return NormalizeTag(raw, TagNormalizer::Default()); },
      py::arg("raw"));
  m.def("pointwise_kl", &PointwiseKl, py::arg("p_target"), py::arg("p_reference"));
  m.def("distinctive_tags", &PyDistinctiveTags, py::arg("counts_a"),
        py::arg("counts_b"), py::arg("top_k") = 10, py::arg("min_count") = 5,
        py::arg("smoothing") = 0.5, py::arg("continuity_correction") = false);
  m.def("run_pipeline_json", &PyRunPipelineJson, py::arg("items"), py::arg("duels"),
        py::arg("tags") = std::nullopt, py::arg("bootstrap") = 1000,
        py::arg("seed") = std::nullopt, py::arg("unit") = "item", py::arg("scale") = "log",
        py::arg("alpha") = 0.1);
}
