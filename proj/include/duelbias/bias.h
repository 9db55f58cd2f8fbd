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


// Bias statistics between two populations: duel outcomes, score and rank
// shifts, correlations between dimensions and category frequencies.
//
// Throughout, "a" is the reference population (group A, M) and "b" the
// compared one (group B, T). Positive score bias means B scores higher.

#ifndef DUELBIAS_BIAS_H_
#define DUELBIAS_BIAS_H_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "duelbias/bootstrap.h"
#include "duelbias/catalog.h"
#include "duelbias/choice_model.h"
#include "duelbias/stats.h"

namespace duelbias {

struct WinFraction {
  double fraction = 0.0;
  PValue p = PValue::FromValue(1.0);
  long long wins = 0;
  long long n = 0;
};

// Fraction of duels won by `side`, with an exact two-sided binomial test
// against one half. Throws DomainError for no duels.
WinFraction DuelWinFraction(std::span<const DuelRecord> duels,
                            Group side = Group::kB);

struct RaterMacroAverage {
  std::map<std::string, double> per_rater;
  double macro_mean = 0.0;
  // Twenty bins of width 0.05 over [0, 1]; the last bin includes 1.
  std::vector<double> bin_edges;
  std::vector<int> histogram;
};

RaterMacroAverage ComputeRaterMacroAverage(std::span<const DuelRecord> duels,
                                           Group side = Group::kB);

// mean(scores_b) - mean(scores_a).
double ScoreBias(std::span<const double> scores_a,
                 std::span<const double> scores_b);

// Percentile rank of the median of `scores_b` within `scores_a`.
double MedianPercentileRank(std::span<const double> scores_a,
                            std::span<const double> scores_b);

// For every x in `grid` (percent), the percentile rank within `scores_a` of
// the x-th percentile of `scores_b`.
std::vector<double> RankCurve(std::span<const double> scores_a,
                              std::span<const double> scores_b,
                              std::span<const double> grid);

// Default rank-curve grid: 5, 10, ..., 95.
std::vector<double> DefaultRankGrid();

struct TriangleBound {
  double bound = 0.0;
  double low = 0.0;
  double high = 0.0;
};

// With b(T,M) = b(T,G) + b(G,M), at least one of the unobserved terms has
// magnitude >= |b(T,M)| / 2. The interval is the magnitude interval shifted
// by the same |b| / 2, e.g. 0.52 [0.46, 0.56] -> 0.26 [0.20, 0.30].
TriangleBound TriangleLowerBound(double bias, double low, double high);

struct DimensionScores {
  std::string dimension;
  std::vector<std::string> item_ids;
  std::vector<double> scores;
};

struct CorrelationMatrix {
  std::vector<std::string> dimensions;
  std::vector<std::vector<double>> r;
  std::vector<std::vector<PValue>> p;
};

// Pearson correlation between every pair of dimensions, matched by item id.
// Throws DomainError unless all dimensions cover the same items.
CorrelationMatrix ScoreCorrelations(std::span<const DimensionScores> dimensions);

struct FrequencyRow {
  std::string category;
  long long count_a = 0;
  long long count_b = 0;
  double freq_a = 0.0;
  double freq_b = 0.0;
  // freq_b / freq_a; meaningless when ratio_infinite.
  double ratio = 0.0;
  bool ratio_infinite = false;
};

struct FrequencyComparison {
  std::vector<FrequencyRow> rows;
  // Absent with fewer than three categories or constant frequencies.
  std::optional<CorrelationResult> spearman;
};

// Throws DomainError when a group has no items or fewer than two categories
// exist.
FrequencyComparison FrequencyDivergence(const ItemCatalog& catalog);

enum class BiasScale { kLog, kRaw };

struct BiasOptions {
  BiasScale scale = BiasScale::kLog;
  ResampleUnit unit = ResampleUnit::kItem;
  BootstrapOptions bootstrap;
  std::vector<double> grid = DefaultRankGrid();
  FitConfig fit;
  Group focal = Group::kB;
};

struct RankCurvePoint {
  double x = 0.0;
  double y = 0.0;
  double low = 0.0;
  double high = 0.0;
};

// Bias statistics of one (category, dimension) tournament.
struct TournamentBias {
  std::string category;
  std::string dimension;
  int n_items_a = 0;
  int n_items_b = 0;
  Interval score_bias;
  Interval median_percentile;
  // The median-percentile interval excludes 50.
  bool median_significant = false;
  std::vector<RankCurvePoint> rank_curve;
  TriangleBound triangle;
  WinFraction win_fraction;
  int bootstrap_discarded = 0;
};

struct TournamentAnalysis {
  ScoreTable scores;
  TournamentBias bias;
  // Coordinates: score bias, median percentile, then the rank curve.
  BootstrapDistribution distribution;
};

// Fits the tournament's duels jointly and bootstraps every statistic. All
// duels must share one category and dimension and reference catalog items.
TournamentAnalysis AnalyzeTournament(std::span<const DuelRecord> duels,
                                     const ItemCatalog& catalog,
                                     const BiasOptions& options);

// Unweighted mean over categories for one dimension.
struct PooledBias {
  std::string dimension;
  int categories = 0;
  Interval score_bias;
  Interval median_percentile;
  bool median_significant = false;
  TriangleBound triangle;
  WinFraction win_fraction;
  RaterMacroAverage raters;
};

// Pools per-category analyses of one dimension. Replicate r of the pooled
// statistic averages replicate r of every category; replicates discarded in
// any category are skipped.
PooledBias PoolTournaments(std::span<const TournamentAnalysis> analyses,
                           std::span<const DuelRecord> dimension_duels,
                           const BiasOptions& options);

}  // namespace duelbias

#endif  // DUELBIAS_BIAS_H_
