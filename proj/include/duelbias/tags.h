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


// Free-form tag normalization and distinctive-tag ranking by pointwise KL
// divergence with chi-square significance.

#ifndef DUELBIAS_TAGS_H_
#define DUELBIAS_TAGS_H_

#include <istream>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "duelbias/catalog.h"
#include "duelbias/stats.h"

namespace duelbias {

struct TagNormalizer {
  // Words dropped while they lead a tag ("looks tasty" -> "tasty").
  std::set<std::string> stopword_prefixes;
  // Variant spelling -> canonical form ("mouthwatering" -> "mouth-watering").
  std::map<std::string, std::string> dash_lexicon;

  static TagNormalizer Default();
  // One stopword per line; blank lines and lines starting with '#' skipped.
  static std::set<std::string> ReadStopwords(std::istream& in);
  // "variant<TAB>canonical" per line. Throws ParseError on malformed lines
  // and ValidationError when a canonical form is itself a variant.
  static std::map<std::string, std::string> ReadLexicon(std::istream& in);
};

// Splits on commas, trims, lowercases (ASCII), collapses inner whitespace,
// strips leading stopwords, applies the lexicon and drops empty results.
// Idempotent.
std::vector<std::string> NormalizeTag(std::string_view raw,
                                      const TagNormalizer& normalizer);

class TagDistribution {
 public:
  explicit TagDistribution(double smoothing_epsilon = 0.5)
      : epsilon_(smoothing_epsilon) {}

  void Add(const std::string& tag, long long count = 1);

  const std::map<std::string, long long>& counts() const { return counts_; }
  long long total() const { return total_; }
  double smoothing_epsilon() const { return epsilon_; }
  long long Count(const std::string& tag) const;
  // (count + eps) / (total + eps * vocabulary_size).
  double Probability(const std::string& tag, std::size_t vocabulary_size) const;

 private:
  std::map<std::string, long long> counts_;
  long long total_ = 0;
  double epsilon_;
};

// p_target * ln(p_target / p_reference). Throws DomainError unless both
// probabilities lie in (0, 1].
double PointwiseKl(double p_target, double p_reference);

// Table-2 style annotation: "*" < 0.05 ... "****" < 0.0001, else "".
std::string SignificanceStars(const PValue& p);

struct DistinctiveTag {
  std::string tag;
  double kl = 0.0;
  double p_target = 0.0;
  double p_reference = 0.0;
  long long count_target = 0;
  long long count_reference = 0;
  double chi_square = 0.0;
  PValue p = PValue::FromValue(1.0);
  std::string stars;
};

struct DistinctiveTagsOptions {
  std::size_t top_k = 10;
  long long min_count = 5;
  bool continuity_correction = false;
};

struct DistinctiveTags {
  // Tags typical of group A (KL of A against B) and of group B.
  std::vector<DistinctiveTag> typical_a;
  std::vector<DistinctiveTag> typical_b;
};

// Ranks by descending pointwise KL over the union vocabulary, keeping tags
// whose combined count reaches min_count. Ties: descending combined count,
// then tag text. The two distributions must share smoothing_epsilon.
DistinctiveTags RankDistinctiveTags(const TagDistribution& tags_a,
                                    const TagDistribution& tags_b,
                                    const DistinctiveTagsOptions& options);

enum class TagCountMode { kMention, kItem };

struct GroupTagDistributions {
  TagDistribution a;
  TagDistribution b;
};

// Normalizes every tag record and tallies it by the item's group. In kItem
// mode each normalized tag counts at most once per item. When `category` is
// non-empty only items of that category contribute. Unknown items throw
// ReferentialError.
GroupTagDistributions BuildTagDistributions(std::span<const TagRecord> tags,
                                            const ItemCatalog& catalog,
                                            const TagNormalizer& normalizer,
                                            TagCountMode mode,
                                            double smoothing_epsilon,
                                            std::string_view category = {});

}  // namespace duelbias

#endif  // DUELBIAS_TAGS_H_
