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


// CSV input/output for item catalogs, duels and tags.
//
//   items.csv  item_id,group,category,external_ref
//   duels.csv  duel_id,category,dimension,item_a,item_b,winner,rater_id
//   tags.csv   duel_id,item_id,rater_id,raw_tag
//
// Headers are required; columns may appear in any order and extra columns
// are ignored. A ColumnMapping renames source headers onto these names.

#ifndef DUELBIAS_DATASET_H_
#define DUELBIAS_DATASET_H_

#include <filesystem>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "duelbias/catalog.h"

namespace duelbias {

struct CsvRow {
  int line = 0;  // 1-based line where the row starts
  std::vector<std::string> fields;
};

// RFC 4180 reader: quoted fields, doubled quotes, embedded newlines, CRLF.
// A leading UTF-8 byte-order mark is skipped.
std::vector<CsvRow> ReadCsv(std::istream& in);
void WriteCsvRow(std::ostream& out, const std::vector<std::string>& fields);

// Canonical column name -> header used in the source file, per table.
struct ColumnMapping {
  std::map<std::string, std::string> items;
  std::map<std::string, std::string> duels;
  std::map<std::string, std::string> tags;

  // {"items": {"item_id": "image_id", ...}, "duels": {...}, "tags": {...}}
  static ColumnMapping FromJson(std::istream& in);
};

ItemCatalog ParseItems(std::istream& in, const ColumnMapping& mapping = {});
ItemCatalog ParseItems(const std::filesystem::path& path,
                       const ColumnMapping& mapping = {});

// Validates every duel against the catalog: known items of opposite groups
// whose category matches the duel's. Rows listing the group-B item first
// are reordered. When `dimensions` is non-empty, other dimensions are
// rejected. The winner column holds A, B, or the winning item's id. A null
// catalog skips the item checks and takes item_a / item_b as given.
std::vector<DuelRecord> ParseDuels(std::istream& in, const ItemCatalog* catalog,
                                   const ColumnMapping& mapping = {},
                                   const std::set<std::string>& dimensions = {});
std::vector<DuelRecord> ParseDuels(const std::filesystem::path& path,
                                   const ItemCatalog* catalog,
                                   const ColumnMapping& mapping = {},
                                   const std::set<std::string>& dimensions = {});

// `catalog` may be null to skip the referential check.
std::vector<TagRecord> ParseTags(std::istream& in, const ItemCatalog* catalog,
                                 const ColumnMapping& mapping = {});
std::vector<TagRecord> ParseTags(const std::filesystem::path& path,
                                 const ItemCatalog* catalog,
                                 const ColumnMapping& mapping = {});

void WriteItems(std::ostream& out, const ItemCatalog& catalog);
void WriteDuels(std::ostream& out, const std::vector<DuelRecord>& duels);
void WriteTags(std::ostream& out, const std::vector<TagRecord>& tags);

// Hex SHA-256 of a file's bytes.
std::string FileDigest(const std::filesystem::path& path);

}  // namespace duelbias

#endif  // DUELBIAS_DATASET_H_
