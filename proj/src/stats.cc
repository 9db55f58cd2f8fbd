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


#include "duelbias/stats.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include <boost/math/distributions/students_t.hpp>

#include "duelbias/error.h"

namespace duelbias {
namespace {

constexpr double kLn10 = std::numbers::ln10;

double LogBinomialPmf(long long j, long long n, double log_p, double log_q) {
  return std::lgamma(static_cast<double>(n) + 1.0) -
         std::lgamma(static_cast<double>(j) + 1.0) -
         std::lgamma(static_cast<double>(n - j) + 1.0) +
         static_cast<double>(j) * log_p + static_cast<double>(n - j) * log_q;
}

// log erfc(z) for z > 0. std::erfc is used while its result is
// representable; beyond that the asymptotic expansion
//   erfc(z) ~ exp(-z^2) / (z sqrt(pi)) * sum_k (-1)^k (2k-1)!! / (2z^2)^k
// is accurate to machine precision (z > 26).
double LogErfc(double z) {
  const double direct = std::erfc(z);
  if (direct > PValue::kLogThreshold) return std::log(direct);
  const double inv2z2 = 1.0 / (2.0 * z * z);
  double term = 1.0;
  double series = 1.0;
  for (int k = 1; k < 8; ++k) {
    term *= -(2.0 * k - 1.0) * inv2z2;
    series += term;
  }
  return -z * z - std::log(z) - 0.5 * std::log(std::numbers::pi) +
         std::log(series);
}

// log of the two-sided Student t tail 2 * P(T > |t|) on df degrees of
// freedom, through I_x(df/2, 1/2) with x = df / (df + t^2) and the
// hypergeometric series
//   I_x(a, b) = x^a (1-x)^b / (a B(a, b)) * sum_n (a+b)_n / (a+1)_n x^n.
// Only used when the direct tail underflows, where x is tiny.
double LogStudentTTwoSidedSeries(double t, double df) {
  const double a = 0.5 * df;
  const double b = 0.5;
  const double x = df / (df + t * t);
  double term = 1.0;
  double sum = 1.0;
  for (int n = 0; n < 200; ++n) {
    term *= (a + b + n) / (a + 1.0 + n) * x;
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  const double log_beta = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
  return a * std::log(x) + b * std::log1p(-x) - std::log(a) - log_beta +
         std::log(sum);
}

PValue StudentTTwoSided(double r, std::size_t n) {
  const double df = static_cast<double>(n) - 2.0;
  if (std::abs(r) >= 1.0) return PValue::FromValue(0.0);
  const double t = r * std::sqrt(df / ((1.0 - r) * (1.0 + r)));
  const boost::math::students_t dist(df);
  const double p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
  if (p > PValue::kLogThreshold) return PValue::FromValue(std::min(1.0, p));
  return PValue::FromLog(LogStudentTTwoSidedSeries(t, df));
}

}  // namespace

PValue PValue::FromLog(double log_p) {
  if (std::isnan(log_p)) throw DomainError("p-value is NaN");
  log_p = std::min(log_p, 0.0);
  if (log_p >= std::log(kLogThreshold)) return PValue(false, std::exp(log_p));
  return PValue(true, log_p / kLn10);
}

PValue PValue::FromValue(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError("p-value outside [0, 1]: " + std::to_string(p));
  }
  if (p >= kLogThreshold) return PValue(false, p);
  return PValue(true, p > 0.0 ? std::log10(p)
                              : -std::numeric_limits<double>::infinity());
}

double PValue::value() const { return is_log_ ? std::pow(10.0, v_) : v_; }

double PValue::log10() const { return is_log_ ? v_ : std::log10(v_); }

PValue BinomialTwoSided(long long k, long long n, double p0) {
  if (n < 1 || k < 0 || k > n) {
    throw DomainError("binomial test needs 0 <= k <= n and n >= 1 (k=" +
                      std::to_string(k) + ", n=" + std::to_string(n) + ")");
  }
  if (!(p0 > 0.0 && p0 < 1.0)) {
    throw DomainError("binomial null probability must lie in (0, 1)");
  }
  const double log_p = std::log(p0);
  const double log_q = std::log1p(-p0);
  // Relative slack so that mathematically equal probabilities (e.g. k and
  // n-k under p0 = 0.5) are both counted despite rounding in lgamma.
  const double threshold = LogBinomialPmf(k, n, log_p, log_q) + 1e-7;
  std::vector<double> terms;
  for (long long j = 0; j <= n; ++j) {
    const double lp = LogBinomialPmf(j, n, log_p, log_q);
    if (lp <= threshold) terms.push_back(lp);
  }
  return PValue::FromLog(LogSumExp(terms));
}

PValue ChiSquare1Tail(double statistic) {
  if (std::isnan(statistic) || statistic < 0.0) {
    throw DomainError("chi-square statistic must be non-negative");
  }
  if (statistic == 0.0) return PValue::FromValue(1.0);
  if (std::isinf(statistic)) return PValue::FromValue(0.0);
  return PValue::FromLog(LogErfc(std::sqrt(0.5 * statistic)));
}

ChiSquareResult ChiSquare2x2(const std::array<std::array<double, 2>, 2>& table,
                             bool continuity_correction) {
  for (const auto& row : table) {
    for (double cell : row) {
      if (!(cell >= 0.0) || std::isinf(cell)) {
        throw DomainError("contingency cells must be finite and >= 0");
      }
    }
  }
  const double a = table[0][0], b = table[0][1];
  const double c = table[1][0], d = table[1][1];
  const double row0 = a + b, row1 = c + d;
  const double col0 = a + c, col1 = b + d;
  if (row0 <= 0.0 || row1 <= 0.0 || col0 <= 0.0 || col1 <= 0.0) {
    throw DomainError("contingency table has a zero marginal");
  }
  const double total = row0 + row1;
  double diff = std::abs(a * d - b * c);
  if (continuity_correction) diff = std::max(0.0, diff - 0.5 * total);
  // Divide step by step; the product of marginals can overflow.
  const double statistic =
      diff / row0 * diff / row1 * total / col0 / col1;
  return {statistic, ChiSquare1Tail(statistic)};
}

CorrelationResult Pearson(std::span<const double> xs,
                          std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    throw DomainError("correlation inputs differ in length");
  }
  if (xs.size() < 3) throw DomainError("correlation needs at least 3 points");
  const double mx = Mean(xs);
  const double my = Mean(ys);
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx <= 0.0 || syy <= 0.0) {
    throw DomainError("correlation undefined for a constant input");
  }
  const double r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  return {r, StudentTTwoSided(r, xs.size())};
}

CorrelationResult Spearman(std::span<const double> xs,
                           std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    throw DomainError("correlation inputs differ in length");
  }
  const std::vector<double> rx = AverageRanks(xs);
  const std::vector<double> ry = AverageRanks(ys);
  return Pearson(rx, ry);
}

std::vector<double> AverageRanks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return values[i] < values[j];
  });
  std::vector<double> ranks(values.size());
  std::size_t start = 0;
  while (start < order.size()) {
    std::size_t end = start + 1;
    while (end < order.size() && values[order[end]] == values[order[start]]) {
      ++end;
    }
    // Positions start..end-1 hold 1-based ranks start+1..end.
    const double rank = 0.5 * static_cast<double>(start + 1 + end);
    for (std::size_t i = start; i < end; ++i) ranks[order[i]] = rank;
    start = end;
  }
  return ranks;
}

double PercentileRank(double value, std::span<const double> sample) {
  if (sample.empty()) throw DomainError("percentile rank of an empty sample");
  double below = 0.0, equal = 0.0;
  for (double s : sample) {
    if (s < value) {
      below += 1.0;
    } else if (s == value) {
      equal += 1.0;
    }
  }
  return 100.0 * (below + 0.5 * equal) / static_cast<double>(sample.size());
}

double Quantile(std::span<const double> sample, double q) {
  if (sample.empty()) throw DomainError("quantile of an empty sample");
  if (!(q >= 0.0 && q <= 1.0)) throw DomainError("quantile level outside [0, 1]");
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  const double h = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = h - static_cast<double>(lo);
  if (frac == 0.0) return sorted[lo];
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

double Mean(std::span<const double> values) {
  if (values.empty()) throw DomainError("mean of an empty sequence");
  return std::accumulate(values.begin(), values.end(), 0.0) /
         static_cast<double>(values.size());
}

double LogSumExp(std::span<const double> terms) {
  if (terms.empty()) return -std::numeric_limits<double>::infinity();
  const double top = *std::max_element(terms.begin(), terms.end());
  if (std::isinf(top)) return top;
  double sum = 0.0;
  for (double t : terms) sum += std::exp(t - top);
  return top + std::log(sum);
}

}  // namespace duelbias
