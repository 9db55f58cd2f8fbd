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


// In-memory records shared by the analysis modules: catalog items, duels
// and free-form tags.

#ifndef DUELBIAS_CATALOG_H_
#define DUELBIAS_CATALOG_H_

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace duelbias {

// Population membership. By convention A is the reference population
// (tracked food) and B the compared one (social media).
enum class Group { kA, kB };

std::string_view GroupName(Group group);
// Accepts "A"/"B" (case-insensitive); nullopt otherwise.
std::optional<Group> ParseGroup(std::string_view text);

struct ItemRecord {
  std::string item_id;
  Group group = Group::kA;
  std::string category;
  std::string external_ref;

  friend bool operator==(const ItemRecord&, const ItemRecord&) = default;
};

class ItemCatalog {
 public:
  ItemCatalog() = default;
  // Throws ValidationError on duplicate or empty ids and empty categories.
  explicit ItemCatalog(std::vector<ItemRecord> items);

  const std::vector<ItemRecord>& items() const { return items_; }
  std::size_t size() const { return items_.size(); }
  // nullptr when unknown.
  const ItemRecord* Find(std::string_view item_id) const;
  // Distinct categories in ascending order.
  std::vector<std::string> Categories() const;

 private:
  std::vector<ItemRecord> items_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct DuelRecord {
  std::string duel_id;
  std::string category;
  std::string dimension;
  std::string item_a;  // group-A item
  std::string item_b;  // group-B item
  Group winner = Group::kA;
  std::string rater_id;

  const std::string& WinnerId() const {
    return winner == Group::kA ? item_a : item_b;
  }
  const std::string& LoserId() const {
    return winner == Group::kA ? item_b : item_a;
  }

  friend bool operator==(const DuelRecord&, const DuelRecord&) = default;
};

struct TagRecord {
  std::string duel_id;
  std::string item_id;
  std::string rater_id;
  std::string raw_text;

  friend bool operator==(const TagRecord&, const TagRecord&) = default;
};

}  // namespace duelbias

#endif  // DUELBIAS_CATALOG_H_
