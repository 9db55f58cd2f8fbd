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


#include "duelbias/bias.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "duelbias/error.h"

namespace duelbias {
namespace {

constexpr int kHistogramBins = 20;

struct GroupScores {
  std::vector<double> a;
  std::vector<double> b;
};

std::vector<double> TournamentStatistic(const GroupScores& groups,
                                        std::span<const double> grid) {
  std::vector<double> out;
  out.reserve(2 + grid.size());
  out.push_back(ScoreBias(groups.a, groups.b));
  out.push_back(MedianPercentileRank(groups.a, groups.b));
  const std::vector<double> curve = RankCurve(groups.a, groups.b, grid);
  out.insert(out.end(), curve.begin(), curve.end());
  return out;
}

double Scaled(double score, BiasScale scale) {
  return scale == BiasScale::kLog ? std::log(score) : score;
}

// Percentile intervals need not contain the point estimate; reports widen
// them so that low <= point <= high always holds.
Interval Widen(Interval interval) {
  interval.low = std::min(interval.low, interval.point);
  interval.high = std::max(interval.high, interval.point);
  return interval;
}

struct FittedTournament {
  ScoreTable scores;
  std::vector<Group> groups;  // aligned with scores.item_ids
};

FittedTournament FitTournament(std::span<const DuelRecord> duels,
                               const ItemCatalog& catalog,
                               const FitConfig& fit) {
  std::set<std::string> ids;
  for (const DuelRecord& duel : duels) {
    ids.insert(duel.item_a);
    ids.insert(duel.item_b);
  }
  std::vector<std::string> item_ids(ids.begin(), ids.end());
  std::vector<std::pair<std::string, std::string>> outcomes;
  outcomes.reserve(duels.size());
  for (const DuelRecord& duel : duels) {
    outcomes.emplace_back(duel.WinnerId(), duel.LoserId());
  }
  FittedTournament out;
  out.scores = Fit(ComparisonGraph::FromOutcomes(item_ids, outcomes), fit);
  // Without convergence the scores drift toward 0 or infinity and every
  // statistic built on them is meaningless.
  if (!out.scores.converged) {
    throw NumericalError("score fit did not converge after " +
                         std::to_string(out.scores.iterations) +
                         " sweeps; the win/loss graph may not be strongly "
                         "connected (consider regularization)");
  }
  for (const std::string& id : out.scores.item_ids) {
    out.groups.push_back(catalog.Find(id)->group);
  }
  return out;
}

GroupScores SplitByGroup(const FittedTournament& fitted, BiasScale scale) {
  GroupScores out;
  for (std::size_t i = 0; i < fitted.groups.size(); ++i) {
    const double v = Scaled(fitted.scores.scores[i], scale);
    (fitted.groups[i] == Group::kA ? out.a : out.b).push_back(v);
  }
  if (out.a.empty() || out.b.empty()) {
    throw DomainError("tournament lacks items from one of the groups");
  }
  return out;
}

void ValidateTournament(std::span<const DuelRecord> duels,
                        const ItemCatalog& catalog) {
  if (duels.empty()) throw DomainError("tournament has no duels");
  for (const DuelRecord& duel : duels) {
    if (duel.category != duels.front().category ||
        duel.dimension != duels.front().dimension) {
      throw ValidationError("tournament mixes categories or dimensions");
    }
    const ItemRecord* a = catalog.Find(duel.item_a);
    const ItemRecord* b = catalog.Find(duel.item_b);
    if (a == nullptr) throw ReferentialError("unknown item: " + duel.item_a);
    if (b == nullptr) throw ReferentialError("unknown item: " + duel.item_b);
    if (a->group != Group::kA || b->group != Group::kB) {
      throw ValidationError("duel " + duel.duel_id +
                            " does not join a group-A and a group-B item");
    }
  }
}

}  // namespace

WinFraction DuelWinFraction(std::span<const DuelRecord> duels, Group side) {
  if (duels.empty()) throw DomainError("win fraction of no duels");
  WinFraction out;
  out.n = static_cast<long long>(duels.size());
  for (const DuelRecord& duel : duels) out.wins += duel.winner == side;
  out.fraction = static_cast<double>(out.wins) / static_cast<double>(out.n);
  out.p = BinomialTwoSided(out.wins, out.n, 0.5);
  return out;
}

RaterMacroAverage ComputeRaterMacroAverage(std::span<const DuelRecord> duels,
                                           Group side) {
  std::map<std::string, std::pair<long long, long long>> tallies;
  for (const DuelRecord& duel : duels) {
    auto& [wins, total] = tallies[duel.rater_id];
    wins += duel.winner == side;
    ++total;
  }
  RaterMacroAverage out;
  for (int i = 0; i <= kHistogramBins; ++i) {
    out.bin_edges.push_back(static_cast<double>(i) / kHistogramBins);
  }
  out.histogram.assign(kHistogramBins, 0);
  double sum = 0.0;
  for (const auto& [rater, tally] : tallies) {
    const double fraction = static_cast<double>(tally.first) /
                            static_cast<double>(tally.second);
    out.per_rater[rater] = fraction;
    sum += fraction;
    const int bin = std::min(kHistogramBins - 1,
                             static_cast<int>(std::floor(fraction * kHistogramBins)));
    ++out.histogram[bin];
  }
  out.macro_mean = tallies.empty() ? 0.0 : sum / static_cast<double>(tallies.size());
  return out;
}

double ScoreBias(std::span<const double> scores_a,
                 std::span<const double> scores_b) {
  if (scores_a.empty() || scores_b.empty()) {
    throw DomainError("score bias needs both groups non-empty");
  }
  return Mean(scores_b) - Mean(scores_a);
}

double MedianPercentileRank(std::span<const double> scores_a,
                            std::span<const double> scores_b) {
  if (scores_a.empty() || scores_b.empty()) {
    throw DomainError("median percentile rank needs both groups non-empty");
  }
  return PercentileRank(Quantile(scores_b, 0.5), scores_a);
}

std::vector<double> RankCurve(std::span<const double> scores_a,
                              std::span<const double> scores_b,
                              std::span<const double> grid) {
  if (scores_a.empty() || scores_b.empty()) {
    throw DomainError("rank curve needs both groups non-empty");
  }
  std::vector<double> sorted_b(scores_b.begin(), scores_b.end());
  std::sort(sorted_b.begin(), sorted_b.end());
  std::vector<double> ys;
  ys.reserve(grid.size());
  for (double x : grid) {
    if (!(x >= 0.0 && x <= 100.0)) {
      throw DomainError("rank-curve grid point outside [0, 100]");
    }
    ys.push_back(PercentileRank(Quantile(sorted_b, x / 100.0), scores_a));
  }
  return ys;
}

std::vector<double> DefaultRankGrid() {
  std::vector<double> grid;
  for (int x = 5; x <= 95; x += 5) grid.push_back(x);
  return grid;
}

TriangleBound TriangleLowerBound(double bias, double low, double high) {
  const double half = 0.5 * std::abs(bias);
  if (bias < 0.0) {
    const double flipped_low = -high;
    high = -low;
    low = flipped_low;
  }
  return {half, low - half, high - half};
}

CorrelationMatrix ScoreCorrelations(std::span<const DimensionScores> dimensions) {
  if (dimensions.empty()) throw DomainError("no dimensions to correlate");
  // Align every dimension on the first one's sorted item order.
  std::vector<std::vector<double>> aligned;
  std::vector<std::string> reference;
  for (const DimensionScores& dim : dimensions) {
    if (dim.item_ids.size() != dim.scores.size()) {
      throw DomainError("dimension " + dim.dimension + " has ragged scores");
    }
    std::vector<std::size_t> order(dim.item_ids.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      return dim.item_ids[x] < dim.item_ids[y];
    });
    std::vector<std::string> ids;
    std::vector<double> values;
    for (std::size_t i : order) {
      ids.push_back(dim.item_ids[i]);
      values.push_back(dim.scores[i]);
    }
    if (aligned.empty()) {
      reference = ids;
    } else if (ids != reference) {
      throw DomainError("dimension " + dim.dimension +
                        " covers a different item set");
    }
    aligned.push_back(std::move(values));
  }
  CorrelationMatrix out;
  const std::size_t d = dimensions.size();
  out.r.assign(d, std::vector<double>(d, 1.0));
  out.p.assign(d, std::vector<PValue>(d, PValue::FromValue(0.0)));
  for (const DimensionScores& dim : dimensions) out.dimensions.push_back(dim.dimension);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      const CorrelationResult c = Pearson(aligned[i], aligned[j]);
      out.r[i][j] = out.r[j][i] = c.r;
      out.p[i][j] = out.p[j][i] = c.p;
    }
  }
  return out;
}

FrequencyComparison FrequencyDivergence(const ItemCatalog& catalog) {
  std::map<std::string, std::pair<long long, long long>> counts;
  long long total_a = 0, total_b = 0;
  for (const ItemRecord& item : catalog.items()) {
    auto& [a, b] = counts[item.category];
    if (item.group == Group::kA) {
      ++a;
      ++total_a;
    } else {
      ++b;
      ++total_b;
    }
  }
  if (total_a == 0 || total_b == 0) {
    throw DomainError("frequency comparison needs items in both groups");
  }
  if (counts.size() < 2) {
    throw DomainError("frequency comparison needs at least two categories");
  }
  FrequencyComparison out;
  std::vector<double> freqs_a, freqs_b;
  for (const auto& [category, tally] : counts) {
    FrequencyRow row;
    row.category = category;
    row.count_a = tally.first;
    row.count_b = tally.second;
    row.freq_a = static_cast<double>(tally.first) / static_cast<double>(total_a);
    row.freq_b = static_cast<double>(tally.second) / static_cast<double>(total_b);
    row.ratio_infinite = row.count_a == 0;
    row.ratio = row.ratio_infinite ? 0.0 : row.freq_b / row.freq_a;
    freqs_a.push_back(row.freq_a);
    freqs_b.push_back(row.freq_b);
    out.rows.push_back(std::move(row));
  }
  try {
    out.spearman = Spearman(freqs_a, freqs_b);
  } catch (const DomainError&) {
    out.spearman.reset();
  }
  return out;
}

TournamentAnalysis AnalyzeTournament(std::span<const DuelRecord> duels,
                                     const ItemCatalog& catalog,
                                     const BiasOptions& options) {
  ValidateTournament(duels, catalog);
  const FittedTournament fitted = FitTournament(duels, catalog, options.fit);
  const GroupScores point_groups = SplitByGroup(fitted, options.scale);

  TournamentAnalysis out;
  if (options.unit == ResampleUnit::kItem) {
    std::vector<std::size_t> items(fitted.groups.size());
    std::vector<int> strata(fitted.groups.size());
    for (std::size_t i = 0; i < items.size(); ++i) {
      items[i] = i;
      strata[i] = fitted.groups[i] == Group::kA ? 0 : 1;
    }
    out.distribution = ResampleStatistic<std::size_t>(
        items,
        [&](const std::vector<std::size_t>& sample) {
          GroupScores groups;
          for (std::size_t i : sample) {
            const double v = Scaled(fitted.scores.scores[i], options.scale);
            (fitted.groups[i] == Group::kA ? groups.a : groups.b).push_back(v);
          }
          return TournamentStatistic(groups, options.grid);
        },
        options.bootstrap, strata);
  } else {
    out.distribution = ResampleStatistic<DuelRecord>(
        duels,
        [&](const std::vector<DuelRecord>& sample) {
          const FittedTournament refit =
              FitTournament(sample, catalog, options.fit);
          return TournamentStatistic(SplitByGroup(refit, options.scale),
                                     options.grid);
        },
        options.bootstrap);
  }

  TournamentBias& bias = out.bias;
  bias.category = duels.front().category;
  bias.dimension = duels.front().dimension;
  bias.n_items_a = static_cast<int>(point_groups.a.size());
  bias.n_items_b = static_cast<int>(point_groups.b.size());
  const double confidence = options.bootstrap.confidence;
  bias.score_bias = Widen(out.distribution.Summarize(0, confidence));
  bias.median_percentile = Widen(out.distribution.Summarize(1, confidence));
  bias.median_significant = bias.median_percentile.low > 50.0 ||
                            bias.median_percentile.high < 50.0;
  for (std::size_t k = 0; k < options.grid.size(); ++k) {
    const Interval y = Widen(out.distribution.Summarize(2 + k, confidence));
    bias.rank_curve.push_back({options.grid[k], y.point, y.low, y.high});
  }
  bias.triangle = TriangleLowerBound(bias.score_bias.point, bias.score_bias.low,
                                     bias.score_bias.high);
  bias.win_fraction = DuelWinFraction(duels, options.focal);
  bias.bootstrap_discarded = out.distribution.discarded;
  out.scores = fitted.scores;
  return out;
}

PooledBias PoolTournaments(std::span<const TournamentAnalysis> analyses,
                           std::span<const DuelRecord> dimension_duels,
                           const BiasOptions& options) {
  if (analyses.empty()) throw DomainError("nothing to pool");
  PooledBias out;
  out.dimension = analyses.front().bias.dimension;
  out.categories = static_cast<int>(analyses.size());
  const std::size_t replicates = analyses.front().distribution.draws.size();

  BootstrapDistribution pooled;
  pooled.point.assign(2, 0.0);
  for (const TournamentAnalysis& analysis : analyses) {
    if (analysis.distribution.draws.size() != replicates) {
      throw DomainError("pooled analyses use different replicate counts");
    }
    pooled.point[0] += analysis.distribution.point[0];
    pooled.point[1] += analysis.distribution.point[1];
  }
  const double count = static_cast<double>(analyses.size());
  pooled.point[0] /= count;
  pooled.point[1] /= count;
  for (std::size_t r = 0; r < replicates; ++r) {
    std::vector<double> draw(2, 0.0);
    bool usable = true;
    for (const TournamentAnalysis& analysis : analyses) {
      const std::vector<double>& d = analysis.distribution.draws[r];
      if (d.empty()) {
        usable = false;
        break;
      }
      draw[0] += d[0] / count;
      draw[1] += d[1] / count;
    }
    if (usable) {
      pooled.draws.push_back(std::move(draw));
    } else {
      ++pooled.discarded;
    }
  }
  const double confidence = options.bootstrap.confidence;
  out.score_bias = Widen(pooled.Summarize(0, confidence));
  out.median_percentile = Widen(pooled.Summarize(1, confidence));
  out.median_significant =
      out.median_percentile.low > 50.0 || out.median_percentile.high < 50.0;
  out.triangle = TriangleLowerBound(out.score_bias.point, out.score_bias.low,
                                    out.score_bias.high);
  out.win_fraction = DuelWinFraction(dimension_duels, options.focal);
  out.raters = ComputeRaterMacroAverage(dimension_duels, options.focal);
  return out;
}

}  // namespace duelbias
