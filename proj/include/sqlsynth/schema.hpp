// Copyright 2026 The sqlsynth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <compare>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sqlsynth/executor.hpp"

namespace sqlsynth {

enum class ValueKind { Text, Number, Date, Other };

std::string_view to_string(ValueKind kind) noexcept;

/// Maps a declared SQL type name to a value kind using SQLite's affinity
/// conventions.
ValueKind value_kind_of(std::string_view declared_type);

struct ColumnRef {
  std::string table;
  std::string column;
  std::vector<std::string> tokens;         // table tokens followed by column tokens
  std::vector<std::string> lemmas;         // of tokens, stop words removed, deduplicated
  std::vector<std::string> column_lemmas;  // same, column name only
  ValueKind value_kind = ValueKind::Other;

  std::string qualified() const { return table + "." + column; }
  /// Qualified name with identifiers quoted where SQL requires it.
  std::string sql() const;

  bool operator==(const ColumnRef& o) const { return table == o.table && column == o.column; }
  std::strong_ordering operator<=>(const ColumnRef& o) const {
    if (auto c = table <=> o.table; c != 0) return c;
    return column <=> o.column;
  }
};

ColumnRef make_column_ref(std::string table, std::string column, std::string_view declared_type);

/// Quotes an identifier unless it is a plain non-keyword word.
std::string sql_identifier(std::string_view name);

struct ForeignKey {
  ColumnRef source;  // referencing column
  ColumnRef target;  // referenced column
};

struct TableEdge {
  std::string a;  // lexicographically smaller endpoint
  std::string b;
  std::vector<std::size_t> foreign_keys;  // indices into SchemaGraph::foreign_keys(), ascending
};

/// Undirected table graph induced by the foreign keys.
struct TableGraph {
  std::vector<std::string> nodes;
  std::vector<TableEdge> edges;

  std::size_t degree(std::string_view table) const;
  const TableEdge* edge_between(std::string_view x, std::string_view y) const;
};

class SchemaGraph {
 public:
  SchemaGraph() = default;
  SchemaGraph(std::vector<std::string> tables, std::vector<ColumnRef> columns,
              std::vector<ForeignKey> foreign_keys);

  const std::vector<std::string>& tables() const { return tables_; }
  const std::vector<ColumnRef>& columns() const { return columns_; }
  const std::vector<ForeignKey>& foreign_keys() const { return foreign_keys_; }
  const TableGraph& adjacency() const { return adjacency_; }

  bool has_table(std::string_view table) const;
  /// Case-insensitive lookup.
  const ColumnRef* find_column(std::string_view table, std::string_view column) const;
  /// Like find_column, but accepts "table.column" and throws UnknownColumn.
  const ColumnRef& column(std::string_view qualified) const;
  std::vector<ColumnRef> columns_of(std::string_view table) const;

 private:
  std::vector<std::string> tables_;
  std::vector<ColumnRef> columns_;
  std::vector<ForeignKey> foreign_keys_;
  TableGraph adjacency_;
};

SchemaGraph load_schema(const Database& db);

/// Parses a schema document:
/// {"tables":[{"name":"t","columns":[{"name":"c","type":"text"}]}],
///  "foreign_keys":{"t.c":"u.d"}}
SchemaGraph load_schema_json(std::string_view json_text);

/// ".json" files are read as schema documents, anything else as a database.
SchemaGraph load_schema(const std::filesystem::path& path);

const TableGraph& table_adjacency(const SchemaGraph& schema);

struct ValueMatch {
  ColumnRef column;
  std::string stored;  // spelling found in the database
};

/// Lazy literal → column index over the non-numeric columns of a database.
/// Exact matches are preferred; when no column holds the literal verbatim,
/// a case-insensitive comparison of trimmed values is tried. Numeric
/// literals are never indexed. Safe for concurrent lookups.
class ValueIndex {
 public:
  ValueIndex(const Database& db, const SchemaGraph& schema);

  std::vector<ValueMatch> lookup(std::string_view literal) const;

 private:
  std::vector<ValueMatch> scan(std::string_view literal) const;

  const Database* db_;
  const SchemaGraph* schema_;
  mutable std::mutex mu_;
  mutable std::map<std::string, std::vector<ValueMatch>, std::less<>> cache_;
};

/// Columns holding `literal`, sorted by (table, column).
std::vector<ColumnRef> columns_containing(const ValueIndex& index, std::string_view literal);

bool is_numeric_literal(std::string_view text);

}  // namespace sqlsynth
