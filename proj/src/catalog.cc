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


#include "duelbias/catalog.h"

#include <set>

#include "duelbias/error.h"

namespace duelbias {

std::string_view GroupName(Group group) {
  return group == Group::kA ? "A" : "B";
}

std::optional<Group> ParseGroup(std::string_view text) {
  if (text == "A" || text == "a") return Group::kA;
  if (text == "B" || text == "b") return Group::kB;
  return std::nullopt;
}

ItemCatalog::ItemCatalog(std::vector<ItemRecord> items)
    : items_(std::move(items)) {
  index_.reserve(items_.size());
  for (std::size_t i = 0; i < items_.size(); ++i) {
    const ItemRecord& item = items_[i];
    if (item.item_id.empty()) throw ValidationError("empty item id");
    if (item.category.empty()) {
      throw ValidationError("item " + item.item_id + " has an empty category");
    }
    if (!index_.emplace(item.item_id, i).second) {
      throw ValidationError("duplicate item id: " + item.item_id);
    }
  }
}

const ItemRecord* ItemCatalog::Find(std::string_view item_id) const {
  const auto it = index_.find(std::string(item_id));
  return it == index_.end() ? nullptr : &items_[it->second];
}

std::vector<std::string> ItemCatalog::Categories() const {
  std::set<std::string> categories;
  for (const ItemRecord& item : items_) categories.insert(item.category);
  return {categories.begin(), categories.end()};
}

}  // namespace duelbias
