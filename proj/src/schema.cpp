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

#include "sqlsynth/schema.hpp"

#include <sqlite3.h>

#include <algorithm>
#include <array>
#include <fstream>
#include <cctype>
#include <set>
#include <sstream>

#include "json.hpp"
#include "sqlsynth/error.hpp"
#include "sqlsynth/lexical.hpp"
#include "sqlsynth/qdmr.hpp"
#include "strings.hpp"

namespace sqlsynth {

namespace {

constexpr std::array<std::string_view, 48> kKeywords = {
    "all",    "and",     "as",     "asc",     "between", "by",     "case",   "check",
    "collate", "column", "create", "cross",   "default", "delete", "desc",   "distinct",
    "drop",   "else",    "end",    "except",  "exists",  "from",   "group",  "having",
    "in",     "index",   "inner",  "insert",  "intersect", "into", "is",     "join",
    "key",    "left",    "like",   "limit",   "natural", "not",    "null",   "on",
    "or",     "order",   "primary", "select", "table",   "union",  "values", "where",
};

std::vector<std::string> dedup_lemmas(std::string_view text) {
  std::vector<std::string> out;
  for (std::string& l : tokenize_and_lemmatize(text)) {
    if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(std::move(l));
  }
  return out;
}

class Statement {
 public:
  Statement(sqlite3* db, const std::string& sql) {
    if (sqlite3_prepare_v2(db, sql.c_str(), -1, &stmt_, nullptr) != SQLITE_OK) {
      std::string msg = sqlite3_errmsg(db);
      sqlite3_finalize(stmt_);
      throw Error(ErrorKind::UnreadableDatabase, "cannot prepare '" + sql + "': " + msg);
    }
  }
  Statement(const Statement&) = delete;
  Statement& operator=(const Statement&) = delete;
  ~Statement() { sqlite3_finalize(stmt_); }

  bool step() {
    int rc = sqlite3_step(stmt_);
    if (rc == SQLITE_ROW) return true;
    if (rc == SQLITE_DONE) return false;
    throw Error(ErrorKind::UnreadableDatabase, sqlite3_errmsg(sqlite3_db_handle(stmt_)));
  }
  std::string text(int col) const {
    const unsigned char* p = sqlite3_column_text(stmt_, col);
    return p ? reinterpret_cast<const char*>(p) : "";
  }
  bool is_null(int col) const { return sqlite3_column_type(stmt_, col) == SQLITE_NULL; }
  int integer(int col) const { return sqlite3_column_int(stmt_, col); }
  void bind(int idx, std::string_view v) {
    sqlite3_bind_text(stmt_, idx, v.data(), static_cast<int>(v.size()), SQLITE_TRANSIENT);
  }

 private:
  sqlite3_stmt* stmt_ = nullptr;
};

std::string quote_string(std::string_view s) {
  std::string out = "'";
  for (char c : s) {
    out += c;
    if (c == '\'') out += '\'';
  }
  return out + "'";
}

std::pair<std::string, std::string> split_qualified(std::string_view q) {
  auto dot = q.find('.');
  if (dot == std::string_view::npos || dot == 0 || dot + 1 == q.size()) {
    throw Error(ErrorKind::InvalidInput, "expected table.column, got '" + std::string(q) + "'");
  }
  return {std::string(q.substr(0, dot)), std::string(q.substr(dot + 1))};
}

}  // namespace

std::string_view to_string(ValueKind kind) noexcept {
  switch (kind) {
    case ValueKind::Text: return "text";
    case ValueKind::Number: return "number";
    case ValueKind::Date: return "date";
    case ValueKind::Other: return "other";
  }
  return "other";
}

ValueKind value_kind_of(std::string_view declared_type) {
  std::string t = strings::lower(declared_type);
  auto has = [&](std::string_view s) { return t.find(s) != std::string::npos; };
  if (has("date") || has("time")) return ValueKind::Date;
  if (has("char") || has("text") || has("clob")) return ValueKind::Text;
  if (has("int") || has("real") || has("floa") || has("doub") || has("num") || has("dec") ||
      has("bool")) {
    return ValueKind::Number;
  }
  return ValueKind::Other;
}

std::string sql_identifier(std::string_view name) {
  bool plain = !name.empty() && !std::isdigit(static_cast<unsigned char>(name[0]));
  for (char c : name) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) plain = false;
  }
  if (plain) {
    std::string l = strings::lower(name);
    for (std::string_view k : kKeywords) {
      if (k == l) plain = false;
    }
  }
  if (plain) return std::string(name);
  std::string out = "\"";
  for (char c : name) {
    out += c;
    if (c == '"') out += '"';
  }
  return out + "\"";
}

std::string ColumnRef::sql() const { return sql_identifier(table) + "." + sql_identifier(column); }

ColumnRef make_column_ref(std::string table, std::string column, std::string_view declared_type) {
  ColumnRef c;
  c.tokens = split_words(table);
  for (std::string& w : split_words(column)) c.tokens.push_back(std::move(w));
  c.lemmas = dedup_lemmas(table + " " + column);
  c.column_lemmas = dedup_lemmas(column);
  c.value_kind = value_kind_of(declared_type);
  c.table = std::move(table);
  c.column = std::move(column);
  return c;
}

std::size_t TableGraph::degree(std::string_view table) const {
  std::size_t d = 0;
  for (const TableEdge& e : edges) {
    if (e.a == table || e.b == table) ++d;
  }
  return d;
}

const TableEdge* TableGraph::edge_between(std::string_view x, std::string_view y) const {
  for (const TableEdge& e : edges) {
    if ((e.a == x && e.b == y) || (e.a == y && e.b == x)) return &e;
  }
  return nullptr;
}

SchemaGraph::SchemaGraph(std::vector<std::string> tables, std::vector<ColumnRef> columns,
                         std::vector<ForeignKey> foreign_keys)
    : tables_(std::move(tables)), columns_(std::move(columns)), foreign_keys_(std::move(foreign_keys)) {
  if (tables_.empty()) throw Error(ErrorKind::NoTables, "schema has no tables");
  adjacency_.nodes = tables_;
  for (std::size_t i = 0; i < foreign_keys_.size(); ++i) {
    const ForeignKey& fk = foreign_keys_[i];
    if (!find_column(fk.source.table, fk.source.column) ||
        !find_column(fk.target.table, fk.target.column)) {
      throw Error(ErrorKind::UnknownColumn, "foreign key endpoint missing: " +
                                                fk.source.qualified() + " -> " +
                                                fk.target.qualified());
    }
    // a self-referencing key adds no table-level edge
    if (fk.source.table == fk.target.table) continue;
    std::string a = std::min(fk.source.table, fk.target.table);
    std::string b = std::max(fk.source.table, fk.target.table);
    auto it = std::find_if(adjacency_.edges.begin(), adjacency_.edges.end(),
                           [&](const TableEdge& e) { return e.a == a && e.b == b; });
    if (it == adjacency_.edges.end()) {
      adjacency_.edges.push_back(TableEdge{a, b, {i}});
    } else {
      it->foreign_keys.push_back(i);
    }
  }
}

bool SchemaGraph::has_table(std::string_view table) const {
  return std::any_of(tables_.begin(), tables_.end(),
                     [&](const std::string& t) { return strings::iequals(t, table); });
}

const ColumnRef* SchemaGraph::find_column(std::string_view table, std::string_view column) const {
  for (const ColumnRef& c : columns_) {
    if (c.table == table && c.column == column) return &c;
  }
  for (const ColumnRef& c : columns_) {
    if (strings::iequals(c.table, table) && strings::iequals(c.column, column)) return &c;
  }
  return nullptr;
}

const ColumnRef& SchemaGraph::column(std::string_view qualified) const {
  auto [t, c] = split_qualified(qualified);
  const ColumnRef* col = find_column(t, c);
  if (!col) throw Error(ErrorKind::UnknownColumn, "unknown column " + std::string(qualified));
  return *col;
}

std::vector<ColumnRef> SchemaGraph::columns_of(std::string_view table) const {
  std::vector<ColumnRef> out;
  for (const ColumnRef& c : columns_) {
    if (strings::iequals(c.table, table)) out.push_back(c);
  }
  return out;
}

SchemaGraph load_schema(const Database& db) {
  sqlite3* h = db.handle();
  std::vector<std::string> tables;
  {
    Statement st(h,
                 "SELECT name FROM sqlite_master WHERE type = 'table' AND name NOT LIKE 'sqlite_%' "
                 "ORDER BY rowid");
    while (st.step()) tables.push_back(st.text(0));
  }
  if (tables.empty()) throw Error(ErrorKind::NoTables, db.path().string() + " has no tables");

  std::vector<ColumnRef> columns;
  std::map<std::string, std::string> primary_key;  // table -> first pk column
  for (const std::string& t : tables) {
    Statement st(h, "PRAGMA table_info(" + quote_string(t) + ")");
    while (st.step()) {
      std::string name = st.text(1);
      if (st.integer(5) == 1) primary_key[t] = name;
      columns.push_back(make_column_ref(t, name, st.text(2)));
    }
  }

  auto resolve = [&](std::string_view table, std::string_view column) -> const ColumnRef* {
    for (const ColumnRef& c : columns) {
      if (strings::iequals(c.table, table) && strings::iequals(c.column, column)) return &c;
    }
    return nullptr;
  };

  std::vector<ForeignKey> fks;
  for (const std::string& t : tables) {
    // The pragma numbers keys from the last declared one; restore
    // declaration order.
    struct KeyRow {
      long long id, seq;
      std::string target_table, from, to;
    };
    std::vector<KeyRow> rows;
    Statement st(h, "PRAGMA foreign_key_list(" + quote_string(t) + ")");
    while (st.step()) {
      rows.push_back({st.integer(0), st.integer(1), st.text(2), st.text(3),
                      st.is_null(4) ? std::string() : st.text(4)});
    }
    std::stable_sort(rows.begin(), rows.end(), [](const KeyRow& a, const KeyRow& b) {
      return a.id != b.id ? a.id > b.id : a.seq < b.seq;
    });
    for (KeyRow& row : rows) {
      const std::string& target_table = row.target_table;
      const std::string& from = row.from;
      std::string to = row.to;
      if (to.empty()) {
        for (const std::string& tt : tables) {
          if (strings::iequals(tt, target_table) && primary_key.count(tt)) to = primary_key[tt];
        }
      }
      const ColumnRef* src = resolve(t, from);
      const ColumnRef* dst = resolve(target_table, to);
      // keys pointing at columns that do not exist are ignored
      if (src && dst) fks.push_back(ForeignKey{*src, *dst});
    }
  }
  return SchemaGraph(std::move(tables), std::move(columns), std::move(fks));
}

SchemaGraph load_schema_json(std::string_view json_text) {
  nlohmann::ordered_json doc;
  try {
    doc = nlohmann::ordered_json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::UnreadableDatabase, std::string("schema document: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("tables") || !doc["tables"].is_array()) {
    throw Error(ErrorKind::UnreadableDatabase, "schema document needs a \"tables\" array");
  }
  std::vector<std::string> tables;
  std::vector<ColumnRef> columns;
  for (const auto& t : doc["tables"]) {
    if (!t.contains("name") || !t["name"].is_string()) {
      throw Error(ErrorKind::UnreadableDatabase, "table entry without a name");
    }
    std::string name = t["name"].get<std::string>();
    tables.push_back(name);
    if (!t.contains("columns")) continue;
    for (const auto& c : t["columns"]) {
      if (c.is_string()) {
        columns.push_back(make_column_ref(name, c.get<std::string>(), ""));
      } else if (c.is_object() && c.contains("name")) {
        std::string type = c.contains("type") ? c["type"].get<std::string>() : "";
        columns.push_back(make_column_ref(name, c["name"].get<std::string>(), type));
      } else {
        throw Error(ErrorKind::UnreadableDatabase, "malformed column entry in table " + name);
      }
    }
  }
  std::vector<ForeignKey> fks;
  if (doc.contains("foreign_keys")) {
    for (const auto& [from, to] : doc["foreign_keys"].items()) {
      auto [st, sc] = split_qualified(from);
      auto [tt, tc] = split_qualified(to.get<std::string>());
      auto find = [&](const std::string& t, const std::string& c) {
        for (const ColumnRef& col : columns) {
          if (strings::iequals(col.table, t) && strings::iequals(col.column, c)) return col;
        }
        throw Error(ErrorKind::UnknownColumn, "foreign key names unknown column " + t + "." + c);
      };
      fks.push_back(ForeignKey{find(st, sc), find(tt, tc)});
    }
  }
  return SchemaGraph(std::move(tables), std::move(columns), std::move(fks));
}

SchemaGraph load_schema(const std::filesystem::path& path) {
  if (strings::lower(path.extension().string()) == ".json") {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::UnreadableDatabase, "cannot read " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return load_schema_json(ss.str());
  }
  Database db = Database::open_read_only(path);
  return load_schema(db);
}

const TableGraph& table_adjacency(const SchemaGraph& schema) { return schema.adjacency(); }

bool is_numeric_literal(std::string_view text) { return make_literal(text).numeric; }

ValueIndex::ValueIndex(const Database& db, const SchemaGraph& schema) : db_(&db), schema_(&schema) {}

std::vector<ValueMatch> ValueIndex::lookup(std::string_view literal) const {
  if (strings::trim(literal).empty() || is_numeric_literal(literal)) return {};
  {
    std::lock_guard lock(mu_);
    auto it = cache_.find(literal);
    if (it != cache_.end()) return it->second;
  }
  std::vector<ValueMatch> found = scan(literal);
  std::lock_guard lock(mu_);
  return cache_.emplace(std::string(literal), std::move(found)).first->second;
}

std::vector<ValueMatch> ValueIndex::scan(std::string_view literal) const {
  std::vector<const ColumnRef*> candidates;
  for (const ColumnRef& c : schema_->columns()) {
    if (c.value_kind != ValueKind::Number) candidates.push_back(&c);
  }
  std::vector<ValueMatch> out;
  for (const ColumnRef* c : candidates) {
    Statement st(db_->handle(), "SELECT 1 FROM " + sql_identifier(c->table) + " WHERE " +
                                    sql_identifier(c->column) + " = ?1 LIMIT 1");
    st.bind(1, literal);
    if (st.step()) out.push_back(ValueMatch{*c, std::string(literal)});
  }
  if (out.empty()) {
    std::string_view trimmed = strings::trim(literal);
    for (const ColumnRef* c : candidates) {
      std::string col = sql_identifier(c->column);
      Statement st(db_->handle(), "SELECT " + col + " FROM " + sql_identifier(c->table) +
                                      " WHERE typeof(" + col + ") = 'text' AND lower(trim(" +
                                      col + ")) = lower(?1) ORDER BY " + col + " LIMIT 1");
      st.bind(1, trimmed);
      if (st.step()) out.push_back(ValueMatch{*c, st.text(0)});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const ValueMatch& a, const ValueMatch& b) { return a.column < b.column; });
  return out;
}

std::vector<ColumnRef> columns_containing(const ValueIndex& index, std::string_view literal) {
  std::vector<ColumnRef> out;
  for (ValueMatch& m : index.lookup(literal)) out.push_back(std::move(m.column));
  return out;
}

}  // namespace sqlsynth
