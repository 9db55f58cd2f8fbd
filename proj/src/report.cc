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


#include "duelbias/report.h"

#include <cmath>
#include <sstream>

#include "duelbias/dataset.h"

namespace duelbias {
namespace {

std::string Num(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

// JSON has no infinities; -inf log10 becomes null.
nlohmann::json Finite(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

}  // namespace

nlohmann::json ToJson(const PValue& p) {
  return {{"value", p.value()}, {"log10", Finite(p.log10())}};
}

nlohmann::json ToJson(const Interval& interval) {
  return {{"point", interval.point}, {"low", interval.low}, {"high", interval.high}};
}

nlohmann::json ToJson(const ScoreTable& table) {
  nlohmann::json scores = nlohmann::json::object();
  for (std::size_t i = 0; i < table.item_ids.size(); ++i) {
    scores[table.item_ids[i]] = table.scores[i];
  }
  return {
      {"scores", scores},
      {"normalization", table.normalization == Normalization::kSumOne
                            ? "sum-one"
                            : "geometric-mean-one"},
      {"log_likelihood", table.log_likelihood},
      {"iterations", table.iterations},
      {"converged", table.converged},
      {"regularization", table.regularization},
      {"reference_score", table.reference_score},
  };
}

nlohmann::json ToJson(const WinFraction& win) {
  return {{"fraction", win.fraction}, {"wins", win.wins}, {"n", win.n},
          {"p", ToJson(win.p)}};
}

nlohmann::json ToJson(const RaterMacroAverage& raters) {
  return {{"per_rater", raters.per_rater},
          {"macro_mean", raters.macro_mean},
          {"bin_edges", raters.bin_edges},
          {"histogram", raters.histogram}};
}

nlohmann::json ToJson(const TriangleBound& bound) {
  return {{"bound", bound.bound}, {"low", bound.low}, {"high", bound.high}};
}

nlohmann::json ToJson(const TournamentBias& bias) {
  nlohmann::json curve = nlohmann::json::array();
  for (const RankCurvePoint& p : bias.rank_curve) {
    curve.push_back({{"x", p.x}, {"y", p.y}, {"low", p.low}, {"high", p.high}});
  }
  return {
      {"category", bias.category},
      {"dimension", bias.dimension},
      {"n_items_a", bias.n_items_a},
      {"n_items_b", bias.n_items_b},
      {"score_bias", ToJson(bias.score_bias)},
      {"median_percentile", ToJson(bias.median_percentile)},
      {"median_significant", bias.median_significant},
      {"rank_curve", curve},
      {"triangle_lower_bound", ToJson(bias.triangle)},
      {"win_fraction", ToJson(bias.win_fraction)},
      {"bootstrap_discarded", bias.bootstrap_discarded},
  };
}

nlohmann::json ToJson(const PooledBias& pooled) {
  return {
      {"dimension", pooled.dimension},
      {"categories", pooled.categories},
      {"score_bias", ToJson(pooled.score_bias)},
      {"median_percentile", ToJson(pooled.median_percentile)},
      {"median_significant", pooled.median_significant},
      {"triangle_lower_bound", ToJson(pooled.triangle)},
      {"win_fraction", ToJson(pooled.win_fraction)},
      {"raters", ToJson(pooled.raters)},
  };
}

nlohmann::json ToJson(const CorrelationMatrix& matrix) {
  nlohmann::json p = nlohmann::json::array();
  for (const auto& row : matrix.p) {
    nlohmann::json out_row = nlohmann::json::array();
    for (const PValue& v : row) out_row.push_back(ToJson(v));
    p.push_back(out_row);
  }
  return {{"dimensions", matrix.dimensions}, {"r", matrix.r}, {"p", p}};
}

nlohmann::json ToJson(const FrequencyComparison& freq) {
  nlohmann::json rows = nlohmann::json::array();
  for (const FrequencyRow& row : freq.rows) {
    rows.push_back({
        {"category", row.category},
        {"count_a", row.count_a},
        {"count_b", row.count_b},
        {"freq_a", row.freq_a},
        {"freq_b", row.freq_b},
        {"ratio_b_over_a", row.ratio_infinite ? nlohmann::json(nullptr)
                                              : nlohmann::json(row.ratio)},
        {"ratio_infinite", row.ratio_infinite},
    });
  }
  nlohmann::json out = {{"categories", rows}};
  if (freq.spearman) {
    out["spearman"] = {{"rho", freq.spearman->r}, {"p", ToJson(freq.spearman->p)}};
  } else {
    out["spearman"] = nullptr;
  }
  return out;
}

nlohmann::json ToJson(const DistinctiveTags& tags) {
  const auto list = [](const std::vector<DistinctiveTag>& tags_in) {
    nlohmann::json out = nlohmann::json::array();
    for (const DistinctiveTag& t : tags_in) {
      out.push_back({
          {"tag", t.tag},
          {"kl", t.kl},
          {"p_target", t.p_target},
          {"p_reference", t.p_reference},
          {"count_target", t.count_target},
          {"count_reference", t.count_reference},
          {"chi_square", t.chi_square},
          {"p", ToJson(t.p)},
          {"stars", t.stars},
      });
    }
    return out;
  };
  return {{"typical_a", list(tags.typical_a)}, {"typical_b", list(tags.typical_b)}};
}

nlohmann::json ToJson(const RecoveryCurve& curve) {
  return {{"budgets", curve.budgets},
          {"mean_tau", curve.mean_tau},
          {"std_tau", curve.std_tau},
          {"replicates", curve.replicates},
          {"seed", curve.seed}};
}

void WriteJson(std::ostream& out, const nlohmann::json& doc) {
  out << doc.dump(2) << '\n';
}

void WriteRecoveryCurveCsv(std::ostream& out, const RecoveryCurve& curve) {
  WriteCsvRow(out, {"budget", "mean_tau", "std_tau", "replicates", "seed"});
  for (std::size_t i = 0; i < curve.budgets.size(); ++i) {
    WriteCsvRow(out, {std::to_string(curve.budgets[i]), Num(curve.mean_tau[i]),
                      Num(curve.std_tau[i]), std::to_string(curve.replicates),
                      std::to_string(curve.seed)});
  }
}

void WriteScheduleCsv(std::ostream& out, const std::string& category,
                      const SchedulePlan& plan, bool header) {
  if (header) WriteCsvRow(out, {"duel_id", "category", "item_a", "item_b"});
  for (std::size_t i = 0; i < plan.pairs.size(); ++i) {
    const std::string id =
        (category.empty() ? std::string("d") : category + "-") + std::to_string(i + 1);
    WriteCsvRow(out, {id, category, plan.pairs[i].first, plan.pairs[i].second});
  }
}

void WriteScoresCsv(std::ostream& out, const std::string& category,
                    const std::string& dimension, const ScoreTable& table,
                    const ItemCatalog& catalog, bool header) {
  if (header) {
    WriteCsvRow(out, {"category", "dimension", "item_id", "group", "score",
                      "log_score", "rank"});
  }
  const std::vector<std::string> ranked = RankItems(table);
  for (std::size_t r = 0; r < ranked.size(); ++r) {
    const double score = table.Score(ranked[r]);
    const ItemRecord* item = catalog.Find(ranked[r]);
    WriteCsvRow(out, {category, dimension, ranked[r],
                      item ? std::string(GroupName(item->group)) : "",
                      Num(score), Num(std::log(score)), std::to_string(r + 1)});
  }
}

void WriteRankCurveCsv(std::ostream& out, const TournamentBias& bias,
                       bool header) {
  if (header) {
    WriteCsvRow(out, {"category", "dimension", "x", "y", "low", "high"});
  }
  for (const RankCurvePoint& p : bias.rank_curve) {
    WriteCsvRow(out, {bias.category, bias.dimension, Num(p.x), Num(p.y),
                      Num(p.low), Num(p.high)});
  }
}

void WriteTagRankingsCsv(std::ostream& out, const std::string& scope,
                         const DistinctiveTags& tags, bool header) {
  if (header) {
    WriteCsvRow(out, {"scope", "typical_of", "rank", "tag", "kl", "count_target",
                      "count_reference", "chi_square", "p", "stars"});
  }
  const auto rows = [&](const std::vector<DistinctiveTag>& list, const char* group) {
    for (std::size_t i = 0; i < list.size(); ++i) {
      const DistinctiveTag& t = list[i];
      WriteCsvRow(out, {scope, group, std::to_string(i + 1), t.tag, Num(t.kl),
                        std::to_string(t.count_target),
                        std::to_string(t.count_reference), Num(t.chi_square),
                        Num(t.p.value()), t.stars});
    }
  };
  rows(tags.typical_a, "A");
  rows(tags.typical_b, "B");
}

void WriteFrequencyCsv(std::ostream& out, const FrequencyComparison& freq) {
  WriteCsvRow(out, {"category", "count_a", "count_b", "freq_a", "freq_b",
                    "ratio_b_over_a"});
  for (const FrequencyRow& row : freq.rows) {
    WriteCsvRow(out, {row.category, std::to_string(row.count_a),
                      std::to_string(row.count_b), Num(row.freq_a), Num(row.freq_b),
                      row.ratio_infinite ? "inf" : Num(row.ratio)});
  }
}

void WriteRaterHistogramCsv(std::ostream& out, const std::string& dimension,
                            const RaterMacroAverage& raters, bool header) {
  if (header) WriteCsvRow(out, {"dimension", "bin_low", "bin_high", "raters"});
  for (std::size_t i = 0; i < raters.histogram.size(); ++i) {
    WriteCsvRow(out, {dimension, Num(raters.bin_edges[i]),
                      Num(raters.bin_edges[i + 1]),
                      std::to_string(raters.histogram[i])});
  }
}

}  // namespace duelbias
