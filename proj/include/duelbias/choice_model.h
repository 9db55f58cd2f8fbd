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


// Bradley-Terry choice model: Pr(a beats b) = s(a) / (s(a) + s(b)).
//
// Latent scores are fit by minorization-maximization (Hunter 2004). With a
// positive regularization alpha each item additionally wins alpha and loses
// alpha pseudo-duels against a virtual item of fixed score 1, so the
// maximizer exists for every comparison graph.

#ifndef DUELBIAS_CHOICE_MODEL_H_
#define DUELBIAS_CHOICE_MODEL_H_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace duelbias {

struct Duel {
  std::size_t winner = 0;
  std::size_t loser = 0;

  friend bool operator==(const Duel&, const Duel&) = default;
};

// Items plus the multiset of observed duels between them.
class ComparisonGraph {
 public:
  ComparisonGraph() = default;
  // Throws ValidationError on duplicate ids, out-of-range indices or
  // self-duels.
  ComparisonGraph(std::vector<std::string> item_ids, std::vector<Duel> duels);

  // Builds from (winner-id, loser-id) pairs; ids must be in `item_ids`.
  static ComparisonGraph FromOutcomes(
      std::vector<std::string> item_ids,
      std::span<const std::pair<std::string, std::string>> outcomes);

  const std::vector<std::string>& item_ids() const { return item_ids_; }
  const std::vector<Duel>& duels() const { return duels_; }
  std::size_t num_items() const { return item_ids_.size(); }
  // Index of `id`, or num_items() when absent.
  std::size_t IndexOf(std::string_view id) const;

  // True iff every item can reach every other along winner->loser edges.
  bool StronglyConnected() const;

 private:
  std::vector<std::string> item_ids_;
  std::vector<Duel> duels_;
  std::unordered_map<std::string, std::size_t> index_;
};

enum class Normalization { kGeometricMeanOne, kSumOne };

struct FitConfig {
  int max_iterations = 10000;
  // Stop once the largest absolute change in a log-score between two
  // sweeps drops below this.
  double tolerance = 1e-8;
  double regularization_alpha = 0.1;
  Normalization normalization = Normalization::kGeometricMeanOne;

  void Validate() const;
};

// Fitted scores, aligned with the graph's item order.
struct ScoreTable {
  std::vector<std::string> item_ids;
  std::vector<double> scores;
  Normalization normalization = Normalization::kGeometricMeanOne;
  // Unregularized log-likelihood of the graph's duels.
  double log_likelihood = 0.0;
  int iterations = 0;
  bool converged = false;
  double regularization = 0.0;
  // Score of the virtual regularization item expressed in the output gauge.
  double reference_score = 1.0;

  // Throws ReferentialError for an unknown id.
  double Score(std::string_view item_id) const;
  std::vector<double> LogScores() const;
};

// Throws DomainError unless both scores are positive and finite.
double WinProbability(double score_a, double score_b);

// Throws DomainError for an empty duel list with alpha = 0 and
// ValidationError listing items that never appear when alpha = 0.
// A graph without a maximum-likelihood solution yields converged = false.
ScoreTable Fit(const ComparisonGraph& graph, const FitConfig& config = {});

// Sum over duels of log WinProbability(winner, loser). Scores are looked up
// by item id; a missing id throws ReferentialError.
double LogLikelihood(const ComparisonGraph& graph, const ScoreTable& scores);
// Same, with scores aligned to graph.item_ids().
double LogLikelihood(const ComparisonGraph& graph,
                     std::span<const double> scores);

// Log-likelihood plus the pseudo-duels against a virtual item of score
// `reference_score`: alpha * sum_i [log P(i beats v) + log P(v beats i)].
double RegularizedLogLikelihood(const ComparisonGraph& graph,
                                std::span<const double> scores, double alpha,
                                double reference_score);

// Ids by descending score, ties by ascending id.
std::vector<std::string> RankItems(const ScoreTable& scores);

}  // namespace duelbias

#endif  // DUELBIAS_CHOICE_MODEL_H_
