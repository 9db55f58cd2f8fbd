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


#include "duelbias/choice_model.h"

#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "duelbias/error.h"
#include "oracles.h"
#include "test_util.h"

namespace duelbias {
namespace {

using testing::Ids;

ComparisonGraph Graph(int n, std::vector<std::pair<int, int>> outcomes) {
  std::vector<Duel> duels;
  for (auto [w, l] : outcomes) {
    duels.push_back({static_cast<std::size_t>(w), static_cast<std::size_t>(l)});
  }
  return ComparisonGraph(Ids(n), duels);
}

FitConfig Unregularized() {
  FitConfig config;
  config.regularization_alpha = 0.0;
  return config;
}

TEST(WinProbabilityTest, Examples) {
  EXPECT_DOUBLE_EQ(WinProbability(1.0, 1.0), 0.5);
  EXPECT_DOUBLE_EQ(WinProbability(3.0, 1.0), 0.75);
  EXPECT_DOUBLE_EQ(WinProbability(0.9, 0.1), 0.9);
}

TEST(WinProbabilityTest, RejectsInvalidScores) {
  EXPECT_THROW(WinProbability(0.0, 1.0), DomainError);
  EXPECT_THROW(WinProbability(1.0, -2.0), DomainError);
  EXPECT_THROW(WinProbability(INFINITY, 1.0), DomainError);
  EXPECT_THROW(WinProbability(NAN, 1.0), DomainError);
}

TEST(WinProbabilityTest, ScaleInvariant) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> score(1e-3, 1e3);
  for (int i = 0; i < 1000; ++i) {
    const double a = score(rng), b = score(rng), k = score(rng);
    EXPECT_NEAR(WinProbability(k * a, k * b), WinProbability(a, b), 1e-12);
  }
}

TEST(ComparisonGraphTest, ValidatesInvariants) {
  EXPECT_THROW(ComparisonGraph(Ids(2), {{0, 0}}), ValidationError);
  EXPECT_THROW(ComparisonGraph(Ids(2), {{0, 2}}), ValidationError);
  EXPECT_THROW(ComparisonGraph({"x", "x"}, {}), ValidationError);
  const std::vector<std::pair<std::string, std::string>> outcomes = {{"a", "zz"}};
  EXPECT_THROW(ComparisonGraph::FromOutcomes({"a", "b"}, outcomes), ReferentialError);
}

TEST(ComparisonGraphTest, StrongConnectivity) {
  EXPECT_TRUE(Graph(3, {{0, 1}, {1, 2}, {2, 0}}).StronglyConnected());
  EXPECT_FALSE(Graph(3, {{0, 1}, {1, 2}, {0, 2}}).StronglyConnected());
}

TEST(FitTest, SymmetricRecordGivesEqualScores) {
  std::vector<std::pair<int, int>> outcomes(5, {0, 1});
  outcomes.insert(outcomes.end(), 5, {1, 0});
  const ScoreTable table = Fit(Graph(2, outcomes), Unregularized());
  EXPECT_TRUE(table.converged);
  EXPECT_NEAR(table.scores[0], table.scores[1], 1e-9);
  EXPECT_NEAR(table.scores[0], 1.0, 1e-9);
}

TEST(FitTest, TwoItemsRecoverEmpiricalRate) {
  const ComparisonGraph graph = Graph(2, {{0, 1}, {0, 1}, {0, 1}, {1, 0}});
  const ScoreTable table = Fit(graph, Unregularized());
  ASSERT_TRUE(table.converged);
  const double p = WinProbability(table.scores[0], table.scores[1]);
  EXPECT_NEAR(p, 0.75, 1e-6);

  // One-dimensional grid search over the log score ratio.
  double best_ll = -INFINITY, best_p = 0.0;
  for (double d = -5.0; d <= 5.0; d += 1e-5) {
    const double pa = 1.0 / (1.0 + std::exp(-d));
    const double ll = 3.0 * std::log(pa) + std::log(1.0 - pa);
    if (ll > best_ll) {
      best_ll = ll;
      best_p = pa;
    }
  }
  EXPECT_NEAR(p, best_p, 1e-5);
  EXPECT_NEAR(table.log_likelihood, best_ll, 1e-9);
}

TEST(FitTest, CycleGivesEqualScores) {
  const ScoreTable table = Fit(Graph(3, {{0, 1}, {1, 2}, {2, 0}}), Unregularized());
  EXPECT_TRUE(table.converged);
  for (double s : table.scores) EXPECT_NEAR(s, 1.0, 1e-9);
}

TEST(FitTest, DegenerateInputs) {
  EXPECT_THROW(Fit(Graph(2, {}), Unregularized()), DomainError);
  try {
    Fit(Graph(4, {{0, 1}, {1, 0}}), Unregularized());
    FAIL() << "expected an unidentifiable-item error";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("i2, i3"), std::string::npos) << e.what();
  }
  // With regularization every item is identifiable.
  const ScoreTable table = Fit(Graph(4, {{0, 1}, {1, 0}}));
  EXPECT_TRUE(table.converged);
  EXPECT_NEAR(table.scores[2], table.scores[3], 1e-9);
}

TEST(FitTest, NoMaximumLikelihoodReportsNonConvergence) {
  // Item 0 beats everybody: the MLE sends its score to infinity.
  FitConfig config = Unregularized();
  config.max_iterations = 500;
  const ScoreTable table = Fit(Graph(3, {{0, 1}, {0, 2}, {1, 2}, {2, 1}}), config);
  EXPECT_FALSE(table.converged);
  EXPECT_LE(table.iterations, 500);
  for (double s : table.scores) {
    EXPECT_GT(s, 0.0);
    EXPECT_TRUE(std::isfinite(s));
  }
}

TEST(FitTest, RegularizationAlwaysConverges) {
  const ScoreTable table = Fit(Graph(3, {{0, 1}, {0, 2}, {1, 2}}));
  EXPECT_TRUE(table.converged);
  EXPECT_GT(table.scores[0], table.scores[1]);
  EXPECT_GT(table.scores[1], table.scores[2]);
}

TEST(FitTest, NormalizationGauges) {
  std::mt19937_64 rng(2);
  const std::vector<double> theta = {0.3, -1.0, 0.8, 0.0, 1.5};
  const ComparisonGraph graph(Ids(5), testing::RandomDuels(theta, 60, rng));
  const ScoreTable geo = Fit(graph);
  double log_sum = 0.0;
  for (double s : geo.scores) log_sum += std::log(s);
  EXPECT_NEAR(log_sum, 0.0, 1e-9);

  FitConfig sum_config;
  sum_config.normalization = Normalization::kSumOne;
  const ScoreTable sum = Fit(graph, sum_config);
  double total = 0.0;
  for (double s : sum.scores) total += s;
  EXPECT_NEAR(total, 1.0, 1e-12);
  // Same model, different gauge.
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_NEAR(sum.scores[i] / sum.scores[0], geo.scores[i] / geo.scores[0], 1e-7);
  }
  EXPECT_NEAR(sum.log_likelihood, geo.log_likelihood, 1e-9);
}

TEST(FitTest, RefitReproducesLikelihood) {
  std::mt19937_64 rng(3);
  const ComparisonGraph graph(Ids(6),
                              testing::RandomDuels({0, 1, 2, -1, -2, 0.5}, 80, rng));
  EXPECT_EQ(Fit(graph).log_likelihood, Fit(graph).log_likelihood);
}

TEST(FitTest, InvalidConfig) {
  FitConfig config;
  config.tolerance = 0.0;
  EXPECT_THROW(Fit(Graph(2, {{0, 1}}), config), DomainError);
  config = {};
  config.max_iterations = 0;
  EXPECT_THROW(Fit(Graph(2, {{0, 1}}), config), DomainError);
}

// Perturbing any single log-score by +-0.01 never increases the
// regularized objective at a converged fit.
TEST(FitTest, ConvergedFitIsLocalMaximum) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 3 + trial % 6;
    std::vector<double> theta(n);
    for (double& t : theta) t = normal(rng);
    const ComparisonGraph graph(Ids(n), testing::RandomDuels(theta, 4 * n, rng));
    FitConfig config;
    config.regularization_alpha = trial % 2 == 0 ? 0.1 : 1.0;
    const ScoreTable table = Fit(graph, config);
    ASSERT_TRUE(table.converged);
    const double base = RegularizedLogLikelihood(graph, table.scores, table.regularization,
                                                 table.reference_score);
    for (int i = 0; i < n; ++i) {
      for (double delta : {-0.01, 0.01}) {
        std::vector<double> moved = table.scores;
        moved[i] *= std::exp(delta);
        EXPECT_LE(RegularizedLogLikelihood(graph, moved, table.regularization,
                                           table.reference_score),
                  base + 1e-12);
      }
    }
  }
}

TEST(FitTest, MatchesGridSearchOracle) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> items(2, 4);
  int checked = 0;
  while (checked < 20) {
    const int n = items(rng);
    std::uniform_int_distribution<int> count(n, 12);
    const std::vector<Duel> duels =
        testing::RandomDuels(std::vector<double>(n, 0.0), count(rng), rng);
    const ComparisonGraph graph(Ids(n), duels);
    if (!graph.StronglyConnected()) continue;
    const ScoreTable table = Fit(graph, Unregularized());
    ASSERT_TRUE(table.converged);
    std::vector<std::pair<int, int>> pairs;
    for (const Duel& d : duels) pairs.emplace_back(d.winner, d.loser);
    EXPECT_NEAR(table.log_likelihood, oracle::GridSearchMaxLogLikelihood(n, pairs),
                1e-3);
    ++checked;
  }
}

TEST(FitTest, PermutationEquivariance) {
  std::mt19937_64 rng(6);
  const int n = 7;
  const std::vector<Duel> duels =
      testing::RandomDuels({0.1, -0.4, 1.1, 0.0, -1.2, 0.6, 0.3}, 50, rng);
  std::vector<std::size_t> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<Duel> relabeled;
  for (const Duel& d : duels) relabeled.push_back({perm[d.winner], perm[d.loser]});
  const std::vector<std::string> ids = Ids(n);
  std::vector<std::string> permuted_ids(n);
  for (int i = 0; i < n; ++i) permuted_ids[perm[i]] = ids[i];

  const ScoreTable original = Fit(ComparisonGraph(ids, duels));
  const ScoreTable permuted = Fit(ComparisonGraph(permuted_ids, relabeled));
  for (int i = 0; i < n; ++i) {
    EXPECT_NEAR(permuted.scores[perm[i]], original.scores[i], 1e-7);
    EXPECT_NEAR(permuted.Score(ids[i]), original.Score(ids[i]), 1e-7);
  }
}

TEST(FitTest, ExtraWinNeverLowersScore) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 5;
    std::vector<double> theta(n);
    for (double& t : theta) t = normal(rng);
    std::vector<Duel> duels = testing::RandomDuels(theta, 25, rng);
    const ScoreTable before = Fit(ComparisonGraph(Ids(n), duels));
    const std::size_t a = trial % n;
    duels.push_back({a, (a + 1 + trial % (n - 1)) % n});
    const ScoreTable after = Fit(ComparisonGraph(Ids(n), duels));
    EXPECT_GE(after.scores[a], before.scores[a] - 1e-9);
  }
}

TEST(LogLikelihoodTest, Examples) {
  ScoreTable equal;
  equal.item_ids = {"i0", "i1"};
  equal.scores = {1.0, 1.0};
  EXPECT_NEAR(LogLikelihood(Graph(2, {{0, 1}}), equal), std::log(0.5), 1e-15);
  EXPECT_NEAR(LogLikelihood(Graph(2, {{0, 1}}), equal), -0.693147, 1e-6);
  EXPECT_EQ(LogLikelihood(Graph(2, {}), equal), 0.0);

  ScoreTable skewed;
  skewed.item_ids = {"i0", "i1"};
  skewed.scores = {3.0, 1.0};
  EXPECT_NEAR(LogLikelihood(Graph(2, {{0, 1}, {0, 1}}), skewed), 2.0 * std::log(0.75),
              1e-15);
  EXPECT_NEAR(LogLikelihood(Graph(2, {{0, 1}, {0, 1}}), skewed), -0.575364, 1e-6);
}

TEST(LogLikelihoodTest, MissingScoreIsLookupError) {
  ScoreTable partial;
  partial.item_ids = {"i0"};
  partial.scores = {1.0};
  EXPECT_THROW(LogLikelihood(Graph(2, {{0, 1}}), partial), ReferentialError);
}

TEST(RankItemsTest, Examples) {
  ScoreTable table;
  table.item_ids = {"a", "b", "c"};
  table.scores = {2.0, 1.0, 3.0};
  EXPECT_EQ(RankItems(table), (std::vector<std::string>{"c", "a", "b"}));
  table.item_ids = {"c", "a", "b"};
  table.scores = {1.0, 1.0, 1.0};
  EXPECT_EQ(RankItems(table), (std::vector<std::string>{"a", "b", "c"}));
  table.item_ids = {"only"};
  table.scores = {0.2};
  EXPECT_EQ(RankItems(table), (std::vector<std::string>{"only"}));
}

}  // namespace
}  // namespace duelbias
