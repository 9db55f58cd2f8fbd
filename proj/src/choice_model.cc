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
#include <map>
#include <numeric>
#include <queue>

#include "duelbias/error.h"

namespace duelbias {
namespace {

// Scores of items that never win (possible only with alpha = 0) would
// otherwise collapse to exactly zero.
constexpr double kMinScore = 1e-300;

struct PairCount {
  std::size_t i;
  std::size_t j;
  double count;
};

// Collapses duels into unordered pair counts; fills per-item win totals.
std::vector<PairCount> CountPairs(const ComparisonGraph& graph,
                                  std::vector<double>& wins) {
  std::map<std::pair<std::size_t, std::size_t>, double> counts;
  for (const Duel& duel : graph.duels()) {
    wins[duel.winner] += 1.0;
    const auto key = std::minmax(duel.winner, duel.loser);
    counts[{key.first, key.second}] += 1.0;
  }
  std::vector<PairCount> pairs;
  pairs.reserve(counts.size());
  for (const auto& [key, count] : counts) {
    pairs.push_back({key.first, key.second, count});
  }
  return pairs;
}

bool ReachesAll(std::size_t n,
                const std::vector<std::vector<std::size_t>>& adjacency) {
  std::vector<bool> seen(n, false);
  std::queue<std::size_t> frontier;
  frontier.push(0);
  seen[0] = true;
  std::size_t reached = 1;
  while (!frontier.empty()) {
    const std::size_t u = frontier.front();
    frontier.pop();
    for (std::size_t v : adjacency[u]) {
      if (!seen[v]) {
        seen[v] = true;
        ++reached;
        frontier.push(v);
      }
    }
  }
  return reached == n;
}

// Multiplier that moves `scores` into the requested gauge.
double GaugeFactor(std::span<const double> scores, Normalization mode) {
  if (mode == Normalization::kSumOne) {
    return 1.0 / std::accumulate(scores.begin(), scores.end(), 0.0);
  }
  double log_sum = 0.0;
  for (double s : scores) log_sum += std::log(s);
  return std::exp(-log_sum / static_cast<double>(scores.size()));
}

}  // namespace

ComparisonGraph::ComparisonGraph(std::vector<std::string> item_ids,
                                 std::vector<Duel> duels)
    : item_ids_(std::move(item_ids)), duels_(std::move(duels)) {
  index_.reserve(item_ids_.size());
  for (std::size_t i = 0; i < item_ids_.size(); ++i) {
    if (!index_.emplace(item_ids_[i], i).second) {
      throw ValidationError("duplicate item id in comparison graph: " +
                            item_ids_[i]);
    }
  }
  for (const Duel& duel : duels_) {
    if (duel.winner >= item_ids_.size() || duel.loser >= item_ids_.size()) {
      throw ValidationError("duel references an item index out of range");
    }
    if (duel.winner == duel.loser) {
      throw ValidationError("duel pairs item " + item_ids_[duel.winner] +
                            " with itself");
    }
  }
}

ComparisonGraph ComparisonGraph::FromOutcomes(
    std::vector<std::string> item_ids,
    std::span<const std::pair<std::string, std::string>> outcomes) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < item_ids.size(); ++i) index.emplace(item_ids[i], i);
  std::vector<Duel> duels;
  duels.reserve(outcomes.size());
  for (const auto& [winner, loser] : outcomes) {
    const auto w = index.find(winner);
    const auto l = index.find(loser);
    if (w == index.end()) throw ReferentialError("unknown item: " + winner);
    if (l == index.end()) throw ReferentialError("unknown item: " + loser);
    duels.push_back({w->second, l->second});
  }
  return ComparisonGraph(std::move(item_ids), std::move(duels));
}

std::size_t ComparisonGraph::IndexOf(std::string_view id) const {
  const auto it = index_.find(std::string(id));
  return it == index_.end() ? item_ids_.size() : it->second;
}

bool ComparisonGraph::StronglyConnected() const {
  const std::size_t n = item_ids_.size();
  if (n <= 1) return true;
  std::vector<std::vector<std::size_t>> forward(n), backward(n);
  for (const Duel& duel : duels_) {
    forward[duel.winner].push_back(duel.loser);
    backward[duel.loser].push_back(duel.winner);
  }
  return ReachesAll(n, forward) && ReachesAll(n, backward);
}

void FitConfig::Validate() const {
  if (max_iterations < 1) throw DomainError("max_iterations must be >= 1");
  if (!(tolerance > 0.0)) throw DomainError("tolerance must be > 0");
  if (!(regularization_alpha >= 0.0) || std::isinf(regularization_alpha)) {
    throw DomainError("regularization alpha must be finite and >= 0");
  }
}

double ScoreTable::Score(std::string_view item_id) const {
  for (std::size_t i = 0; i < item_ids.size(); ++i) {
    if (item_ids[i] == item_id) return scores[i];
  }
  throw ReferentialError("no score for item " + std::string(item_id));
}

std::vector<double> ScoreTable::LogScores() const {
  std::vector<double> out(scores.size());
  std::transform(scores.begin(), scores.end(), out.begin(),
                 [](double s) { return std::log(s); });
  return out;
}

double WinProbability(double score_a, double score_b) {
  if (!(score_a > 0.0) || !(score_b > 0.0) || std::isinf(score_a) ||
      std::isinf(score_b)) {
    throw DomainError("scores must be positive and finite");
  }
  return score_a / (score_a + score_b);
}

ScoreTable Fit(const ComparisonGraph& graph, const FitConfig& config) {
  config.Validate();
  const std::size_t n = graph.num_items();
  const double alpha = config.regularization_alpha;
  if (n == 0) throw DomainError("cannot fit an empty comparison graph");
  if (alpha == 0.0 && graph.duels().empty()) {
    throw DomainError("degenerate fit: no duels and no regularization");
  }

  std::vector<double> wins(n, 0.0);
  const std::vector<PairCount> pairs = CountPairs(graph, wins);

  if (alpha == 0.0) {
    std::vector<bool> appears(n, false);
    for (const Duel& duel : graph.duels()) {
      appears[duel.winner] = appears[duel.loser] = true;
    }
    std::string missing;
    for (std::size_t i = 0; i < n; ++i) {
      if (!appears[i]) missing += (missing.empty() ? "" : ", ") + graph.item_ids()[i];
    }
    if (!missing.empty()) {
      throw ValidationError("unidentifiable items (no duels): " + missing);
    }
  }

  std::vector<double> scores(n, 1.0);
  std::vector<double> next(n);
  std::vector<double> denominators(n);
  ScoreTable table;
  for (int iter = 1; iter <= config.max_iterations; ++iter) {
    for (std::size_t i = 0; i < n; ++i) {
      denominators[i] = 2.0 * alpha / (scores[i] + 1.0);
    }
    for (const PairCount& pair : pairs) {
      const double inv = pair.count / (scores[pair.i] + scores[pair.j]);
      denominators[pair.i] += inv;
      denominators[pair.j] += inv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      next[i] = std::max(kMinScore, (wins[i] + alpha) / denominators[i]);
    }
    // Without the virtual item nothing pins the gauge, so it is fixed every
    // sweep; the likelihood is scale invariant and ascent is preserved.
    if (alpha == 0.0) {
      const double factor = GaugeFactor(next, Normalization::kGeometricMeanOne);
      for (double& s : next) s = std::max(kMinScore, s * factor);
    }
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      change = std::max(change, std::abs(std::log(next[i]) - std::log(scores[i])));
    }
    scores.swap(next);
    table.iterations = iter;
    if (change < config.tolerance) {
      table.converged = true;
      break;
    }
  }
  if (alpha == 0.0 && !graph.StronglyConnected()) table.converged = false;

  const double factor = GaugeFactor(scores, config.normalization);
  for (double& s : scores) s *= factor;

  table.item_ids = graph.item_ids();
  table.scores = std::move(scores);
  table.normalization = config.normalization;
  table.regularization = alpha;
  table.reference_score = factor;
  table.log_likelihood = LogLikelihood(graph, table.scores);
  return table;
}

double LogLikelihood(const ComparisonGraph& graph,
                     std::span<const double> scores) {
  if (scores.size() != graph.num_items()) {
    throw ReferentialError("score vector does not cover the graph's items");
  }
  double total = 0.0;
  for (const Duel& duel : graph.duels()) {
    const double sw = scores[duel.winner];
    const double sl = scores[duel.loser];
    total += std::log(sw) - std::log(sw + sl);
  }
  return total;
}

double LogLikelihood(const ComparisonGraph& graph, const ScoreTable& scores) {
  std::unordered_map<std::string_view, double> lookup;
  for (std::size_t i = 0; i < scores.item_ids.size(); ++i) {
    lookup.emplace(scores.item_ids[i], scores.scores[i]);
  }
  std::vector<double> aligned(graph.num_items(), 0.0);
  std::vector<bool> used(graph.num_items(), false);
  for (const Duel& duel : graph.duels()) used[duel.winner] = used[duel.loser] = true;
  for (std::size_t i = 0; i < graph.num_items(); ++i) {
    const auto it = lookup.find(graph.item_ids()[i]);
    if (it != lookup.end()) {
      aligned[i] = it->second;
    } else if (used[i]) {
      throw ReferentialError("no score for item " + graph.item_ids()[i]);
    } else {
      aligned[i] = 1.0;  // never referenced by a duel
    }
  }
  return LogLikelihood(graph, aligned);
}

double RegularizedLogLikelihood(const ComparisonGraph& graph,
                                std::span<const double> scores, double alpha,
                                double reference_score) {
  double total = LogLikelihood(graph, scores);
  if (alpha == 0.0) return total;
  for (double s : scores) {
    total += alpha * (std::log(s) + std::log(reference_score) -
                      2.0 * std::log(s + reference_score));
  }
  return total;
}

std::vector<std::string> RankItems(const ScoreTable& scores) {
  std::vector<std::size_t> order(scores.item_ids.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores.scores[a] != scores.scores[b]) {
      return scores.scores[a] > scores.scores[b];
    }
    return scores.item_ids[a] < scores.item_ids[b];
  });
  std::vector<std::string> ranked;
  ranked.reserve(order.size());
  for (std::size_t i : order) ranked.push_back(scores.item_ids[i]);
  return ranked;
}

}  // namespace duelbias
