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


#include "duelbias/tags.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <array>

#include "duelbias/error.h"

namespace duelbias {
namespace {

std::vector<std::string> SplitWords(std::string_view text) {
  std::vector<std::string> words;
  std::string current;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!current.empty()) words.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  if (!current.empty()) words.push_back(std::move(current));
  return words;
}

std::string JoinWords(std::span<const std::string> words) {
  std::string out;
  for (const std::string& w : words) {
    if (!out.empty()) out.push_back(' ');
    out += w;
  }
  return out;
}

// Lowercased, whitespace-collapsed form used for lexicon keys.
std::string Canonicalize(std::string_view text) {
  return JoinWords(SplitWords(text));
}

std::string StripCarriageReturn(const std::string& line) {
  std::string out = line;
  if (!out.empty() && out.back() == '\r') out.pop_back();
  return out;
}

}  // namespace

TagNormalizer TagNormalizer::Default() {
  TagNormalizer n;
  n.stopword_prefixes = {"looks", "seems", "appears", "very"};
  n.dash_lexicon = {
      {"mouth watering", "mouth-watering"}, {"mouthwatering", "mouth-watering"},
      {"well done", "well-done"},           {"welldone", "well-done"},
      {"deep fried", "deep-fried"},         {"deepfried", "deep-fried"},
      {"low fat", "low-fat"},               {"lowfat", "low-fat"},
      {"home cooked", "home-cooked"},       {"homecooked", "home-cooked"},
  };
  return n;
}

std::set<std::string> TagNormalizer::ReadStopwords(std::istream& in) {
  std::set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    const std::string word = Canonicalize(StripCarriageReturn(line));
    if (word.empty() || word.front() == '#') continue;
    words.insert(word);
  }
  return words;
}

std::map<std::string, std::string> TagNormalizer::ReadLexicon(std::istream& in) {
  std::map<std::string, std::string> lexicon;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    line = StripCarriageReturn(line);
    if (Canonicalize(line).empty() || line.front() == '#') continue;
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      throw ParseError("lexicon line lacks a tab separator", line_number);
    }
    const std::string variant = Canonicalize(line.substr(0, tab));
    const std::string canonical = Canonicalize(line.substr(tab + 1));
    if (variant.empty() || canonical.empty() ||
        canonical.find(',') != std::string::npos) {
      throw ParseError("malformed lexicon entry", line_number);
    }
    lexicon[variant] = canonical;
  }
  for (const auto& [variant, canonical] : lexicon) {
    if (lexicon.contains(canonical) && lexicon.at(canonical) != canonical) {
      throw ValidationError("lexicon canonical form '" + canonical +
                            "' is itself mapped elsewhere");
    }
  }
  return lexicon;
}

std::vector<std::string> NormalizeTag(std::string_view raw,
                                      const TagNormalizer& normalizer) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= raw.size()) {
    std::size_t comma = raw.find(',', start);
    if (comma == std::string_view::npos) comma = raw.size();
    std::vector<std::string> words = SplitWords(raw.substr(start, comma - start));
    std::size_t lead = 0;
    while (lead < words.size() &&
           normalizer.stopword_prefixes.contains(words[lead])) {
      ++lead;
    }
    std::string tag =
        JoinWords(std::span<const std::string>(words).subspan(lead));
    if (const auto it = normalizer.dash_lexicon.find(tag);
        it != normalizer.dash_lexicon.end()) {
      tag = it->second;
    }
    if (!tag.empty()) out.push_back(std::move(tag));
    start = comma + 1;
  }
  return out;
}

void TagDistribution::Add(const std::string& tag, long long count) {
  if (count < 0) throw DomainError("negative tag count");
  counts_[tag] += count;
  total_ += count;
}

long long TagDistribution::Count(const std::string& tag) const {
  const auto it = counts_.find(tag);
  return it == counts_.end() ? 0 : it->second;
}

double TagDistribution::Probability(const std::string& tag,
                                    std::size_t vocabulary_size) const {
  const double denominator =
      static_cast<double>(total_) + epsilon_ * static_cast<double>(vocabulary_size);
  if (!(denominator > 0.0)) {
    throw DomainError("probability of a tag in an empty distribution");
  }
  return (static_cast<double>(Count(tag)) + epsilon_) / denominator;
}

double PointwiseKl(double p_target, double p_reference) {
  if (!(p_target > 0.0 && p_target <= 1.0) ||
      !(p_reference > 0.0 && p_reference <= 1.0)) {
    throw DomainError("pointwise KL needs probabilities in (0, 1]");
  }
  return p_target * std::log(p_target / p_reference);
}

std::string SignificanceStars(const PValue& p) {
  const double lg = p.log10();
  if (lg < -4.0) return "****";
  if (lg < std::log10(0.001)) return "***";
  if (lg < std::log10(0.01)) return "**";
  if (lg < std::log10(0.05)) return "*";
  return "";
}

DistinctiveTags RankDistinctiveTags(const TagDistribution& tags_a,
                                    const TagDistribution& tags_b,
                                    const DistinctiveTagsOptions& options) {
  if (tags_a.total() == 0 || tags_b.total() == 0) {
    throw DomainError("distinctive tags need two non-empty distributions");
  }
  if (tags_a.smoothing_epsilon() != tags_b.smoothing_epsilon()) {
    throw DomainError("tag distributions use different smoothing");
  }
  std::set<std::string> vocabulary;
  for (const auto& [tag, count] : tags_a.counts()) vocabulary.insert(tag);
  for (const auto& [tag, count] : tags_b.counts()) vocabulary.insert(tag);

  const auto make = [&](const std::string& tag, const TagDistribution& target,
                        const TagDistribution& reference) {
    DistinctiveTag t;
    t.tag = tag;
    t.count_target = target.Count(tag);
    t.count_reference = reference.Count(tag);
    t.p_target = target.Probability(tag, vocabulary.size());
    t.p_reference = reference.Probability(tag, vocabulary.size());
    t.kl = PointwiseKl(t.p_target, t.p_reference);
    const std::array<std::array<double, 2>, 2> table = {{
        {static_cast<double>(t.count_target),
         static_cast<double>(target.total() - t.count_target)},
        {static_cast<double>(t.count_reference),
         static_cast<double>(reference.total() - t.count_reference)},
    }};
    try {
      const ChiSquareResult chi = ChiSquare2x2(table, options.continuity_correction);
      t.chi_square = chi.statistic;
      t.p = chi.p;
    } catch (const DomainError&) {
      // A zero marginal (the tag is every mention in both groups) carries
      // no evidence of a difference.
      t.chi_square = 0.0;
      t.p = PValue::FromValue(1.0);
    }
    t.stars = SignificanceStars(t.p);
    return t;
  };
  const auto rank = [&](std::vector<DistinctiveTag>& list) {
    std::sort(list.begin(), list.end(),
              [](const DistinctiveTag& x, const DistinctiveTag& y) {
                if (x.kl != y.kl) return x.kl > y.kl;
                const long long cx = x.count_target + x.count_reference;
                const long long cy = y.count_target + y.count_reference;
                if (cx != cy) return cx > cy;
                return x.tag < y.tag;
              });
    if (list.size() > options.top_k) list.resize(options.top_k);
  };

  DistinctiveTags out;
  for (const std::string& tag : vocabulary) {
    if (tags_a.Count(tag) + tags_b.Count(tag) < options.min_count) continue;
    out.typical_a.push_back(make(tag, tags_a, tags_b));
    out.typical_b.push_back(make(tag, tags_b, tags_a));
  }
  rank(out.typical_a);
  rank(out.typical_b);
  return out;
}

GroupTagDistributions BuildTagDistributions(std::span<const TagRecord> tags,
                                            const ItemCatalog& catalog,
                                            const TagNormalizer& normalizer,
                                            TagCountMode mode,
                                            double smoothing_epsilon,
                                            std::string_view category) {
  GroupTagDistributions out{TagDistribution(smoothing_epsilon),
                            TagDistribution(smoothing_epsilon)};
  std::set<std::pair<std::string, std::string>> seen;
  for (const TagRecord& record : tags) {
    const ItemRecord* item = catalog.Find(record.item_id);
    if (item == nullptr) {
      throw ReferentialError("tag references unknown item " + record.item_id);
    }
    if (!category.empty() && item->category != category) continue;
    TagDistribution& dist = item->group == Group::kA ? out.a : out.b;
    for (const std::string& tag : NormalizeTag(record.raw_text, normalizer)) {
      if (mode == TagCountMode::kItem &&
          !seen.emplace(record.item_id, tag).second) {
        continue;
      }
      dist.Add(tag);
    }
  }
  return out;
}

}  // namespace duelbias
