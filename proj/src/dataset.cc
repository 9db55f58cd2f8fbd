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


#include "duelbias/dataset.h"

#include <array>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string_view>

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include "duelbias/error.h"

namespace duelbias {
namespace {

std::string Trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t");
  if (first == std::string_view::npos) return "";
  const auto last = text.find_last_not_of(" \t");
  return std::string(text.substr(first, last - first + 1));
}

std::ifstream OpenInput(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path.string());
  return in;
}

// Column lookup for one table, honoring the mapping.
class Table {
 public:
  Table(std::istream& in, const std::map<std::string, std::string>& mapping,
        std::string_view kind)
      : rows_(ReadCsv(in)), mapping_(mapping), kind_(kind) {
    if (rows_.empty()) {
      throw ParseError(std::string(kind_) + " file has no header row", 1);
    }
    for (std::size_t i = 0; i < rows_.front().fields.size(); ++i) {
      header_.emplace(Trim(rows_.front().fields[i]), i);
    }
  }

  std::size_t Require(const std::string& column) const {
    const std::optional<std::size_t> index = Optional(column);
    if (!index) {
      throw ParseError(std::string(kind_) + " header lacks column '" +
                           SourceName(column) + "'",
                       rows_.front().line);
    }
    return *index;
  }

  std::optional<std::size_t> Optional(const std::string& column) const {
    const auto it = header_.find(SourceName(column));
    if (it == header_.end()) return std::nullopt;
    return it->second;
  }

  // Data rows, skipping blank lines; throws on ragged rows.
  std::vector<const CsvRow*> Rows() const {
    std::vector<const CsvRow*> out;
    for (std::size_t i = 1; i < rows_.size(); ++i) {
      const CsvRow& row = rows_[i];
      if (row.fields.size() == 1 && Trim(row.fields[0]).empty()) continue;
      if (row.fields.size() != rows_.front().fields.size()) {
        throw ParseError("expected " +
                             std::to_string(rows_.front().fields.size()) +
                             " fields, found " + std::to_string(row.fields.size()),
                         row.line);
      }
      out.push_back(&row);
    }
    return out;
  }

 private:
  std::string SourceName(const std::string& column) const {
    const auto it = mapping_.find(column);
    return it == mapping_.end() ? column : it->second;
  }

  std::vector<CsvRow> rows_;
  std::map<std::string, std::size_t> header_;
  const std::map<std::string, std::string>& mapping_;
  std::string_view kind_;
};

std::string AtLine(int line, const std::string& message) {
  return "line " + std::to_string(line) + ": " + message;
}

}  // namespace

std::vector<CsvRow> ReadCsv(std::istream& in) {
  std::string data((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  std::size_t pos = 0;
  if (data.rfind("\xEF\xBB\xBF", 0) == 0) pos = 3;

  std::vector<CsvRow> rows;
  if (pos >= data.size()) return rows;
  int line = 1;
  CsvRow row{line, {}};
  std::string field;
  bool quoted = false;
  bool field_started = false;
  for (; pos < data.size(); ++pos) {
    const char c = data[pos];
    if (quoted) {
      if (c == '"') {
        if (pos + 1 < data.size() && data[pos + 1] == '"') {
          field.push_back('"');
          ++pos;
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    if (c == '"' && !field_started) {
      quoted = true;
      field_started = true;
    } else if (c == ',') {
      row.fields.push_back(std::move(field));
      field.clear();
      field_started = false;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && pos + 1 < data.size() && data[pos + 1] == '\n') ++pos;
      row.fields.push_back(std::move(field));
      rows.push_back(std::move(row));
      field.clear();
      field_started = false;
      ++line;
      row = CsvRow{line, {}};
    } else {
      field.push_back(c);
      field_started = true;
    }
  }
  if (quoted) throw ParseError("unterminated quoted field", row.line);
  if (field_started || !row.fields.empty()) {
    row.fields.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

void WriteCsvRow(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out << ',';
    const std::string& f = fields[i];
    if (f.find_first_of(",\"\r\n") == std::string::npos &&
        (f.empty() || (f.front() != ' ' && f.back() != ' '))) {
      out << f;
      continue;
    }
    out << '"';
    for (char c : f) {
      if (c == '"') out << '"';
      out << c;
    }
    out << '"';
  }
  out << '\n';
}

ColumnMapping ColumnMapping::FromJson(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("column mapping: ") + e.what(), 0);
  }
  if (!doc.is_object()) throw ParseError("column mapping must be an object", 0);
  ColumnMapping mapping;
  const auto load = [&](const char* key, std::map<std::string, std::string>& dst) {
    if (!doc.contains(key)) return;
    const nlohmann::json& section = doc.at(key);
    if (!section.is_object()) {
      throw ParseError(std::string("column mapping '") + key +
                           "' must be an object",
                       0);
    }
    for (const auto& [canonical, source] : section.items()) {
      if (!source.is_string()) {
        throw ParseError("column mapping values must be strings", 0);
      }
      dst[canonical] = source.get<std::string>();
    }
  };
  load("items", mapping.items);
  load("duels", mapping.duels);
  load("tags", mapping.tags);
  return mapping;
}

ItemCatalog ParseItems(std::istream& in, const ColumnMapping& mapping) {
  const Table table(in, mapping.items, "items");
  const std::size_t id_col = table.Require("item_id");
  const std::size_t group_col = table.Require("group");
  const std::size_t category_col = table.Require("category");
  const std::optional<std::size_t> ref_col = table.Optional("external_ref");

  std::vector<ItemRecord> items;
  std::map<std::string, int> first_line;
  for (const CsvRow* row : table.Rows()) {
    ItemRecord item;
    item.item_id = Trim(row->fields[id_col]);
    item.category = Trim(row->fields[category_col]);
    if (ref_col) item.external_ref = row->fields[*ref_col];
    const std::string group = Trim(row->fields[group_col]);
    const std::optional<Group> parsed = ParseGroup(group);
    if (!parsed) {
      throw ValidationError(AtLine(row->line, "unknown group label '" + group + "'"));
    }
    item.group = *parsed;
    if (item.item_id.empty()) throw ValidationError(AtLine(row->line, "empty item_id"));
    if (item.category.empty()) throw ValidationError(AtLine(row->line, "empty category"));
    if (const auto [it, fresh] = first_line.emplace(item.item_id, row->line); !fresh) {
      throw ValidationError(AtLine(row->line, "duplicate item id '" + item.item_id +
                                                  "' (first on line " +
                                                  std::to_string(it->second) + ")"));
    }
    items.push_back(std::move(item));
  }
  return ItemCatalog(std::move(items));
}

ItemCatalog ParseItems(const std::filesystem::path& path,
                       const ColumnMapping& mapping) {
  std::ifstream in = OpenInput(path);
  return ParseItems(in, mapping);
}

std::vector<DuelRecord> ParseDuels(std::istream& in, const ItemCatalog* catalog,
                                   const ColumnMapping& mapping,
                                   const std::set<std::string>& dimensions) {
  const Table table(in, mapping.duels, "duels");
  const std::size_t id_col = table.Require("duel_id");
  const std::size_t category_col = table.Require("category");
  const std::size_t dimension_col = table.Require("dimension");
  const std::size_t a_col = table.Require("item_a");
  const std::size_t b_col = table.Require("item_b");
  const std::size_t winner_col = table.Require("winner");
  const std::size_t rater_col = table.Require("rater_id");

  std::set<std::string> categories;
  if (catalog != nullptr) {
    for (const ItemRecord& item : catalog->items()) categories.insert(item.category);
  }

  std::vector<DuelRecord> duels;
  for (const CsvRow* row : table.Rows()) {
    const auto& f = row->fields;
    DuelRecord duel;
    duel.duel_id = Trim(f[id_col]);
    duel.category = Trim(f[category_col]);
    duel.dimension = Trim(f[dimension_col]);
    duel.item_a = Trim(f[a_col]);
    duel.item_b = Trim(f[b_col]);
    duel.rater_id = Trim(f[rater_col]);
    const std::string winner = Trim(f[winner_col]);

    if (duel.dimension.empty()) {
      throw ValidationError(AtLine(row->line, "empty dimension"));
    }
    if (!dimensions.empty() && !dimensions.contains(duel.dimension)) {
      throw ValidationError(AtLine(row->line, "unknown dimension '" +
                                                  duel.dimension + "'"));
    }
    if (duel.item_a.empty() || duel.item_b.empty()) {
      throw ValidationError(AtLine(row->line, "empty item id"));
    }
    if (duel.item_a == duel.item_b) {
      throw ValidationError(AtLine(row->line, "duel pairs an item with itself"));
    }
    bool swapped = false;
    if (catalog != nullptr) {
      if (!categories.contains(duel.category)) {
        throw ReferentialError(AtLine(row->line, "category '" + duel.category +
                                                     "' is not in the catalog"));
      }
      const ItemRecord* a = catalog->Find(duel.item_a);
      const ItemRecord* b = catalog->Find(duel.item_b);
      if (a == nullptr) {
        throw ReferentialError(AtLine(row->line, "unknown item '" + duel.item_a + "'"));
      }
      if (b == nullptr) {
        throw ReferentialError(AtLine(row->line, "unknown item '" + duel.item_b + "'"));
      }
      if (a->group == b->group) {
        throw ValidationError(AtLine(row->line,
                                     "duel joins two group-" +
                                         std::string(GroupName(a->group)) + " items"));
      }
      if (a->category != duel.category || b->category != duel.category) {
        throw ValidationError(AtLine(row->line, "duel category '" + duel.category +
                                                    "' differs from its items'"));
      }
      swapped = a->group == Group::kB;
    }

    std::optional<Group> side = ParseGroup(winner);
    if (side) {
      // A/B name the column position in the source row.
      if (swapped) side = *side == Group::kA ? Group::kB : Group::kA;
    } else if (winner == duel.item_a) {
      side = swapped ? Group::kB : Group::kA;
    } else if (winner == duel.item_b) {
      side = swapped ? Group::kA : Group::kB;
    } else {
      throw ParseError("winner '" + winner + "' is neither A, B nor a duel item",
                       row->line);
    }
    if (swapped) std::swap(duel.item_a, duel.item_b);
    duel.winner = *side;
    duels.push_back(std::move(duel));
  }
  return duels;
}

std::vector<DuelRecord> ParseDuels(const std::filesystem::path& path,
                                   const ItemCatalog* catalog,
                                   const ColumnMapping& mapping,
                                   const std::set<std::string>& dimensions) {
  std::ifstream in = OpenInput(path);
  return ParseDuels(in, catalog, mapping, dimensions);
}

std::vector<TagRecord> ParseTags(std::istream& in, const ItemCatalog* catalog,
                                 const ColumnMapping& mapping) {
  const Table table(in, mapping.tags, "tags");
  const std::size_t duel_col = table.Require("duel_id");
  const std::size_t item_col = table.Require("item_id");
  const std::size_t rater_col = table.Require("rater_id");
  const std::size_t raw_col = table.Require("raw_tag");

  std::vector<TagRecord> tags;
  for (const CsvRow* row : table.Rows()) {
    TagRecord tag;
    tag.duel_id = Trim(row->fields[duel_col]);
    tag.item_id = Trim(row->fields[item_col]);
    tag.rater_id = Trim(row->fields[rater_col]);
    tag.raw_text = row->fields[raw_col];
    if (Trim(tag.raw_text).empty()) {
      throw ValidationError(AtLine(row->line, "empty tag text"));
    }
    if (catalog != nullptr && catalog->Find(tag.item_id) == nullptr) {
      throw ReferentialError(AtLine(row->line, "unknown item '" + tag.item_id + "'"));
    }
    tags.push_back(std::move(tag));
  }
  return tags;
}

std::vector<TagRecord> ParseTags(const std::filesystem::path& path,
                                 const ItemCatalog* catalog,
                                 const ColumnMapping& mapping) {
  std::ifstream in = OpenInput(path);
  return ParseTags(in, catalog, mapping);
}

void WriteItems(std::ostream& out, const ItemCatalog& catalog) {
  WriteCsvRow(out, {"item_id", "group", "category", "external_ref"});
  for (const ItemRecord& item : catalog.items()) {
    WriteCsvRow(out, {item.item_id, std::string(GroupName(item.group)),
                      item.category, item.external_ref});
  }
}

void WriteDuels(std::ostream& out, const std::vector<DuelRecord>& duels) {
  WriteCsvRow(out, {"duel_id", "category", "dimension", "item_a", "item_b",
                    "winner", "rater_id"});
  for (const DuelRecord& d : duels) {
    WriteCsvRow(out, {d.duel_id, d.category, d.dimension, d.item_a, d.item_b,
                      std::string(GroupName(d.winner)), d.rater_id});
  }
}

void WriteTags(std::ostream& out, const std::vector<TagRecord>& tags) {
  WriteCsvRow(out, {"duel_id", "item_id", "rater_id", "raw_tag"});
  for (const TagRecord& t : tags) {
    WriteCsvRow(out, {t.duel_id, t.item_id, t.rater_id, t.raw_text});
  }
}

std::string FileDigest(const std::filesystem::path& path) {
  std::ifstream in = OpenInput(path);
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                              &EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
    throw NumericalError("SHA-256 initialization failed");
  }
  std::array<char, 1 << 16> buffer;
  while (in) {
    in.read(buffer.data(), buffer.size());
    EVP_DigestUpdate(ctx.get(), buffer.data(), static_cast<std::size_t>(in.gcount()));
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest;
  unsigned int length = 0;
  EVP_DigestFinal_ex(ctx.get(), digest.data(), &length);
  std::ostringstream hex;
  for (unsigned int i = 0; i < length; ++i) {
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return hex.str();
}

}  // namespace duelbias
