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


// Exact and approximate test statistics shared by the analysis modules.

#ifndef DUELBIAS_STATS_H_
#define DUELBIAS_STATS_H_

#include <array>
#include <span>
#include <vector>

namespace duelbias {

// A p-value that stays meaningful below the double range. Values at or
// above kLogThreshold are stored directly; smaller ones are stored as
// log10(p).
class PValue {
 public:
  static constexpr double kLogThreshold = 1e-300;

  // Builds from a natural-log p-value, choosing the representation.
  static PValue FromLog(double log_p);
  static PValue FromValue(double p);

  bool is_log() const { return is_log_; }
  // Underflows to 0 in log representation.
  double value() const;
  double log10() const;

  friend bool operator==(const PValue&, const PValue&) = default;

 private:
  PValue(bool is_log, double v) : is_log_(is_log), v_(v) {}

  bool is_log_ = false;
  double v_ = 1.0;
};

// Exact two-sided binomial test: sums Pr(j) over all outcomes j with
// Pr(j) <= Pr(k), in log space. Requires 0 <= k <= n, n >= 1, 0 < p0 < 1.
PValue BinomialTwoSided(long long k, long long n, double p0 = 0.5);

struct ChiSquareResult {
  double statistic = 0.0;
  PValue p = PValue::FromValue(1.0);
};

// Pearson chi-square test of independence on a 2x2 table of counts,
// table[row][col], 1 degree of freedom.
ChiSquareResult ChiSquare2x2(const std::array<std::array<double, 2>, 2>& table,
                             bool continuity_correction = false);

// Upper tail of the chi-square distribution with one degree of freedom.
PValue ChiSquare1Tail(double statistic);

struct CorrelationResult {
  double r = 0.0;
  PValue p = PValue::FromValue(1.0);
};

// Sample correlation with a two-sided p-value from the Student t
// approximation on n-2 degrees of freedom. Requires n >= 3 and non-constant
// inputs.
CorrelationResult Pearson(std::span<const double> xs,
                          std::span<const double> ys);

// Pearson correlation of average ranks.
CorrelationResult Spearman(std::span<const double> xs,
                           std::span<const double> ys);

// 1-based ranks with ties assigned their average rank.
std::vector<double> AverageRanks(std::span<const double> values);

// 100 * (#below + 0.5 * #equal) / n.
double PercentileRank(double value, std::span<const double> sample);

// Linear-interpolation quantile (q in [0, 1]) of an unsorted sample.
double Quantile(std::span<const double> sample, double q);

double Mean(std::span<const double> values);

// Natural log of sum(exp(terms)); -inf for an empty input.
double LogSumExp(std::span<const double> terms);

}  // namespace duelbias

#endif  // DUELBIAS_STATS_H_
