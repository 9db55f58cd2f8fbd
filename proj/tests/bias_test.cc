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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "duelbias/error.h"
#include "test_util.h"

namespace duelbias {
namespace {

DuelRecord MakeDuel(std::string a, std::string b, Group winner, std::string rater,
                    std::string dimension = "taste") {
  static int counter = 0;
  DuelRecord duel;
  duel.duel_id = "d" + std::to_string(++counter);
  duel.category = "soup";
  duel.dimension = std::move(dimension);
  duel.item_a = std::move(a);
  duel.item_b = std::move(b);
  duel.winner = winner;
  duel.rater_id = std::move(rater);
  return duel;
}

TEST(WinFractionTest, Examples) {
  std::vector<DuelRecord> duels;
  for (int i = 0; i < 7; ++i) duels.push_back(MakeDuel("m", "t", Group::kB, "r"));
  for (int i = 0; i < 3; ++i) duels.push_back(MakeDuel("m", "t", Group::kA, "r"));
  const WinFraction b = DuelWinFraction(duels);
  EXPECT_EQ(b.wins, 7);
  EXPECT_EQ(b.n, 10);
  EXPECT_DOUBLE_EQ(b.fraction, 0.7);
  EXPECT_NEAR(b.p.value(), 0.34375, 1e-12);
  const WinFraction a = DuelWinFraction(duels, Group::kA);
  EXPECT_DOUBLE_EQ(a.fraction, 0.3);
  EXPECT_NEAR(a.p.value(), 0.34375, 1e-12);
  EXPECT_THROW(DuelWinFraction(std::vector<DuelRecord>{}), DomainError);
}

TEST(RaterMacroAverageTest, AveragesPerRaterFractions) {
  std::vector<DuelRecord> duels;
  // r1: 1/1 for B. r2: 1/3 for B.
  duels.push_back(MakeDuel("m", "t", Group::kB, "r1"));
  duels.push_back(MakeDuel("m", "t", Group::kB, "r2"));
  duels.push_back(MakeDuel("m", "t", Group::kA, "r2"));
  duels.push_back(MakeDuel("m", "t", Group::kA, "r2"));
  const RaterMacroAverage avg = ComputeRaterMacroAverage(duels);
  EXPECT_NEAR(avg.macro_mean, (1.0 + 1.0 / 3.0) / 2.0, 1e-15);
  ASSERT_EQ(avg.bin_edges.size(), 21u);
  ASSERT_EQ(avg.histogram.size(), 20u);
  EXPECT_EQ(avg.histogram[19], 1);  // 1.0 falls in the closed last bin
  EXPECT_EQ(avg.histogram[6], 1);   // 0.333 in [0.30, 0.35)
}

TEST(RaterMacroAverageTest, Examples) {
  std::vector<DuelRecord> one;
  for (Group g : {Group::kB, Group::kB, Group::kB, Group::kA}) {
    one.push_back(MakeDuel("m", "t", g, "r"));
  }
  const RaterMacroAverage single = ComputeRaterMacroAverage(one);
  EXPECT_DOUBLE_EQ(single.per_rater.at("r"), 0.75);
  EXPECT_DOUBLE_EQ(single.macro_mean, 0.75);

  std::vector<DuelRecord> two;
  for (int i = 0; i < 5; ++i) {
    two.push_back(MakeDuel("m", "t", i < 2 ? Group::kB : Group::kA, "x"));
    two.push_back(MakeDuel("m", "t", i < 3 ? Group::kB : Group::kA, "y"));
  }
  EXPECT_NEAR(ComputeRaterMacroAverage(two).macro_mean, 0.5, 1e-15);
}

TEST(WinFractionTest, SpecExamples) {
  std::vector<DuelRecord> duels;
  for (int i = 0; i < 10; ++i) {
    duels.push_back(MakeDuel("m", "t", i < 5 ? Group::kB : Group::kA, "r"));
  }
  EXPECT_DOUBLE_EQ(DuelWinFraction(duels).fraction, 0.5);
  EXPECT_DOUBLE_EQ(DuelWinFraction(duels).p.value(), 1.0);
  for (auto& d : duels) d.winner = Group::kA;
  EXPECT_NEAR(DuelWinFraction(duels).p.value(), 0.0019531, 1e-7);
}

TEST(ScoreBiasTest, Examples) {
  const std::vector<double> a = {0.0, 0.0}, b = {0.5, 0.5};
  EXPECT_DOUBLE_EQ(ScoreBias(a, b), 0.5);
  EXPECT_DOUBLE_EQ(ScoreBias(b, a), -0.5);
  EXPECT_DOUBLE_EQ(ScoreBias(a, a), 0.0);
  EXPECT_THROW(ScoreBias(std::vector<double>{}, b), DomainError);
  const std::vector<double> t = {2, 4}, m = {1, 3};
  EXPECT_DOUBLE_EQ(ScoreBias(m, t), 1.0);
}

TEST(RankCurveTest, Example) {
  const std::vector<double> grid = {25, 50, 75};
  const std::vector<double> b = {1, 2, 3, 4}, a = {2, 3, 4, 5};
  const std::vector<double> y = RankCurve(a, b, grid);
  ASSERT_EQ(y.size(), 3u);
  EXPECT_NEAR(y[0], 0.0, 1e-12);
  EXPECT_NEAR(y[1], 25.0, 1e-12);
  EXPECT_NEAR(y[2], 50.0, 1e-12);
  EXPECT_NEAR(MedianPercentileRank(a, b), 25.0, 1e-12);
}

TEST(RankCurveTest, IdenticalGroupsGiveIdentityAtMedian) {
  const std::vector<double> s = {1, 2, 3, 4, 5};
  EXPECT_DOUBLE_EQ(MedianPercentileRank(s, s), 50.0);
}

TEST(RankCurveTest, DominanceAndIdentity) {
  const std::vector<double> m = {1, 2, 3, 4}, t = {10, 11, 12};
  EXPECT_DOUBLE_EQ(MedianPercentileRank(m, t), 100.0);
  for (double y : RankCurve(m, t, DefaultRankGrid())) EXPECT_DOUBLE_EQ(y, 100.0);
  std::vector<double> same(50);
  for (int i = 0; i < 50; ++i) same[i] = i;
  const auto grid = DefaultRankGrid();
  const auto y = RankCurve(same, same, grid);
  for (std::size_t k = 0; k < grid.size(); ++k) EXPECT_NEAR(y[k], grid[k], 2.0);
}

TEST(RankCurveTest, MedianMatchesCurveAtFifty) {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> normal;
  const std::vector<double> fifty = {50};
  for (int t = 0; t < 300; ++t) {
    std::vector<double> a(10 + t % 7), b(8 + t % 5);
    for (double& v : a) v = normal(rng);
    for (double& v : b) v = normal(rng);
    EXPECT_NEAR(MedianPercentileRank(a, b), RankCurve(a, b, fifty)[0],
                100.0 / a.size() + 1e-12);
  }
}

TEST(RankCurveTest, Errors) {
  const std::vector<double> s = {1, 2};
  const std::vector<double> bad = {101};
  EXPECT_THROW(RankCurve(s, s, bad), DomainError);
  EXPECT_THROW(RankCurve(std::vector<double>{}, s, DefaultRankGrid()), DomainError);
}

TEST(RankCurveTest, DefaultGrid) {
  const std::vector<double> grid = DefaultRankGrid();
  ASSERT_EQ(grid.size(), 19u);
  EXPECT_EQ(grid.front(), 5.0);
  EXPECT_EQ(grid.back(), 95.0);
}

// Multiplying every score by k > 0 (a shift on the log scale) leaves the
// rank statistics unchanged, and the curve is non-decreasing in x.
TEST(RankCurveTest, GaugeInvariantAndMonotone) {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> gauge(0.01, 100.0);
  const auto grid = DefaultRankGrid();
  for (int t = 0; t < 200; ++t) {
    std::vector<double> a(9), b(12);
    for (double& v : a) v = std::exp(normal(rng));
    for (double& v : b) v = std::exp(normal(rng) + 0.3);
    const double k = gauge(rng);
    std::vector<double> ka, kb;
    for (double v : a) ka.push_back(k * v);
    for (double v : b) kb.push_back(k * v);
    const auto y = RankCurve(a, b, grid);
    const auto yk = RankCurve(ka, kb, grid);
    for (std::size_t i = 0; i < y.size(); ++i) {
      EXPECT_NEAR(y[i], yk[i], 1e-9);
      if (i > 0) EXPECT_GE(y[i], y[i - 1]);
    }
    EXPECT_NEAR(MedianPercentileRank(a, b), MedianPercentileRank(ka, kb), 1e-9);
  }
}

TEST(TriangleBoundTest, Examples) {
  TriangleBound t = TriangleLowerBound(0.52, 0.46, 0.56);
  EXPECT_NEAR(t.bound, 0.26, 1e-12);
  EXPECT_NEAR(t.low, 0.20, 1e-12);
  EXPECT_NEAR(t.high, 0.30, 1e-12);
  t = TriangleLowerBound(-0.58, -0.64, -0.50);
  EXPECT_NEAR(t.bound, 0.29, 1e-12);
  EXPECT_NEAR(t.low, 0.21, 1e-12);
  EXPECT_NEAR(t.high, 0.35, 1e-12);
  t = TriangleLowerBound(0.0, -0.1, 0.1);
  EXPECT_EQ(t.bound, 0.0);
}

TEST(ScoreCorrelationsTest, AlignsById) {
  std::vector<DimensionScores> dims(2);
  dims[0] = {"taste", {"x", "y", "z"}, {1.0, 2.0, 3.0}};
  dims[1] = {"look", {"z", "x", "y"}, {30.0, 10.0, 20.0}};
  const CorrelationMatrix m = ScoreCorrelations(dims);
  EXPECT_NEAR(m.r[0][1], 1.0, 1e-12);
  EXPECT_EQ(m.r[0][0], 1.0);
  dims[1].item_ids = {"z", "x", "w"};
  EXPECT_THROW(ScoreCorrelations(dims), DomainError);
}

TEST(FrequencyDivergenceTest, Example) {
  std::vector<ItemRecord> items;
  auto add = [&](std::string id, Group g, std::string cat) {
    items.push_back({std::move(id), g, std::move(cat), ""});
  };
  add("a1", Group::kA, "soup");
  add("a2", Group::kA, "soup");
  add("a3", Group::kA, "cake");
  add("b1", Group::kB, "soup");
  add("b2", Group::kB, "cake");
  add("b3", Group::kB, "cake");
  add("b4", Group::kB, "stew");
  const FrequencyComparison f = FrequencyDivergence(ItemCatalog(items));
  ASSERT_EQ(f.rows.size(), 3u);
  EXPECT_EQ(f.rows[0].category, "cake");
  EXPECT_NEAR(f.rows[0].freq_a, 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(f.rows[0].freq_b, 0.5, 1e-15);
  EXPECT_NEAR(f.rows[0].ratio, 1.5, 1e-12);
  EXPECT_EQ(f.rows[2].category, "stew");
  EXPECT_TRUE(f.rows[2].ratio_infinite);
  EXPECT_TRUE(f.spearman.has_value());
}

BiasOptions SmallOptions(ResampleUnit unit) {
  BiasOptions options;
  options.unit = unit;
  options.bootstrap.replicates = 200;
  options.bootstrap.seed = 3;
  return options;
}

TEST(AnalyzeTournamentTest, DetectsPlantedOffset) {
  const auto study = testing::MakeStudy({"soup"}, {"taste"}, 40, 10, 1.5, 17);
  const TournamentAnalysis analysis =
      AnalyzeTournament(study.duels, study.catalog, SmallOptions(ResampleUnit::kItem));
  const TournamentBias& bias = analysis.bias;
  EXPECT_EQ(bias.n_items_a, 40);
  EXPECT_EQ(bias.n_items_b, 40);
  EXPECT_GT(bias.score_bias.point, 0.3);
  EXPECT_GT(bias.score_bias.low, 0.0);
  EXPECT_LE(bias.score_bias.low, bias.score_bias.point);
  EXPECT_GE(bias.score_bias.high, bias.score_bias.point);
  EXPECT_GT(bias.median_percentile.point, 50.0);
  EXPECT_TRUE(bias.median_significant)
      << bias.median_percentile.low << " " << bias.median_percentile.high;
  EXPECT_EQ(bias.rank_curve.size(), 19u);
  EXPECT_GT(bias.win_fraction.fraction, 0.5);
  EXPECT_NEAR(bias.triangle.bound, 0.5 * bias.score_bias.point, 1e-12);
}

TEST(AnalyzeTournamentTest, DuelUnitRefitsAndIsDeterministic) {
  const auto study = testing::MakeStudy({"soup"}, {"taste"}, 15, 6, 0.0, 5);
  const BiasOptions options = SmallOptions(ResampleUnit::kDuel);
  const TournamentAnalysis first = AnalyzeTournament(study.duels, study.catalog, options);
  const TournamentAnalysis second = AnalyzeTournament(study.duels, study.catalog, options);
  EXPECT_EQ(first.distribution.draws, second.distribution.draws);
  EXPECT_LT(first.bias.score_bias.low, first.bias.score_bias.high);
}

TEST(AnalyzeTournamentTest, ValidatesInput) {
  const auto study = testing::MakeStudy({"soup"}, {"taste", "look"}, 5, 2, 0.0, 5);
  const BiasOptions options = SmallOptions(ResampleUnit::kItem);
  EXPECT_THROW(AnalyzeTournament(study.duels, study.catalog, options), ValidationError);
  std::vector<DuelRecord> duels(study.duels.begin(), study.duels.begin() + 10);
  duels[0].item_a = "ghost";
  EXPECT_THROW(AnalyzeTournament(duels, study.catalog, options), ReferentialError);
  duels[0] = study.duels[0];
  std::swap(duels[0].item_a, duels[0].item_b);
  EXPECT_THROW(AnalyzeTournament(duels, study.catalog, options), ValidationError);
  EXPECT_THROW(AnalyzeTournament(std::vector<DuelRecord>{}, study.catalog, options),
               DomainError);
}

TEST(PoolTournamentsTest, AveragesCategories) {
  const auto study = testing::MakeStudy({"cake", "soup"}, {"taste"}, 20, 8, 0.5, 23);
  const BiasOptions options = SmallOptions(ResampleUnit::kItem);
  std::vector<TournamentAnalysis> analyses;
  for (const std::string category : {"cake", "soup"}) {
    std::vector<DuelRecord> duels;
    for (const DuelRecord& d : study.duels) {
      if (d.category == category) duels.push_back(d);
    }
    analyses.push_back(AnalyzeTournament(duels, study.catalog, options));
  }
  const PooledBias pooled = PoolTournaments(analyses, study.duels, options);
  EXPECT_EQ(pooled.categories, 2);
  EXPECT_NEAR(pooled.score_bias.point,
              0.5 * (analyses[0].bias.score_bias.point + analyses[1].bias.score_bias.point),
              1e-12);
  EXPECT_LE(pooled.score_bias.low, pooled.score_bias.point);
  EXPECT_EQ(pooled.win_fraction.n, static_cast<long long>(study.duels.size()));
  EXPECT_THROW(PoolTournaments(std::vector<TournamentAnalysis>{}, study.duels, options),
               DomainError);
}

}  // namespace
}  // namespace duelbias
