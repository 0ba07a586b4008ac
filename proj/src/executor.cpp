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

#include "sqlsynth/executor.hpp"

#include <sqlite3.h>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <unordered_set>
#include <optional>

#include "sqlsynth/error.hpp"
#include "strings.hpp"

namespace sqlsynth {

namespace {

struct StmtFinalizer {
  void operator()(sqlite3_stmt* s) const { sqlite3_finalize(s); }
};
using Stmt = std::unique_ptr<sqlite3_stmt, StmtFinalizer>;

struct Deadline {
  std::chrono::steady_clock::time_point at;
  bool fired = false;
};

int progress_callback(void* arg) {
  auto* deadline = static_cast<Deadline*>(arg);
  if (std::chrono::steady_clock::now() >= deadline->at) {
    deadline->fired = true;
    return 1;
  }
  return 0;
}

std::string format_number(double v) {
  if (std::isfinite(v) && v == std::floor(v) && std::fabs(v) < 1e15) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.0f", v);
    return buf;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

std::optional<double> parse_number(std::string_view s) {
  s = strings::trim(s);
  if (s.empty()) return std::nullopt;
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

// Numeric view of a cell: numbers, and text that spells a number.
std::optional<double> numeric_value(const Cell& c) {
  if (c.is_number()) return c.as_number();
  if (c.is_text()) return parse_number(c.as_text());
  return std::nullopt;
}

// Equal keys imply cells_equal. The converse fails near the tolerance boundary
// and for text spelling a number; those cases fall back to a linear scan.
std::string cell_key(const Cell& c) {
  if (c.is_null()) return "N";
  if (c.is_number()) {
    double v = c.as_number();
    char buf[40];
    std::snprintf(buf, sizeof buf, "D%.9g", v == 0.0 ? 0.0 : v);
    return buf;
  }
  return "T" + std::string(strings::trim_right(c.as_text()));
}

std::string row_key(const Row& row) {
  std::string key;
  for (const Cell& c : row) {
    key += cell_key(c);
    key.push_back('\x1f');
  }
  return key;
}

bool rows_equal(const Row& a, const Row& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!cells_equal(a[i], b[i])) return false;
  }
  return true;
}

// Every row of `from` has an equal row in `into`.
bool covered(const Denotation& from, const Denotation& into) {
  std::unordered_set<std::string> keys;
  keys.reserve(into.rows.size());
  for (const Row& r : into.rows) keys.insert(row_key(r));
  for (const Row& r : from.rows) {
    if (keys.count(row_key(r))) continue;
    bool found = false;
    for (const Row& other : into.rows) {
      if (rows_equal(r, other)) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace

std::string Cell::to_string() const {
  if (is_null()) return "NULL";
  if (is_number()) return format_number(as_number());
  return as_text();
}

void Database::Closer::operator()(sqlite3* db) const { sqlite3_close_v2(db); }

Database::~Database() = default;

Database Database::open_read_only(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) {
    throw Error(ErrorKind::UnreadableDatabase, "database file not found: " + path.string());
  }
  sqlite3* raw = nullptr;
  int rc = sqlite3_open_v2(path.c_str(), &raw, SQLITE_OPEN_READONLY | SQLITE_OPEN_NOMUTEX,
                           nullptr);
  std::unique_ptr<sqlite3, Closer> db(raw);
  if (rc != SQLITE_OK) {
    std::string msg = raw ? sqlite3_errmsg(raw) : "out of memory";
    throw Error(ErrorKind::UnreadableDatabase, "cannot open " + path.string() + ": " + msg);
  }
  // Opening is lazy; touch the schema so that non-database files fail here.
  rc = sqlite3_exec(db.get(), "SELECT count(*) FROM sqlite_master", nullptr, nullptr, nullptr);
  if (rc != SQLITE_OK) {
    throw Error(ErrorKind::UnreadableDatabase,
                "not a database: " + path.string() + ": " + sqlite3_errmsg(db.get()));
  }
  return Database(std::move(db), path);
}

Denotation execute(const Database& db, std::string_view sql, std::chrono::milliseconds timeout) {
  if (strings::trim(sql).empty()) throw Error(ErrorKind::SqlError, "empty SQL statement");
  sqlite3_stmt* raw = nullptr;
  const char* tail = nullptr;
  int rc = sqlite3_prepare_v2(db.handle(), sql.data(), static_cast<int>(sql.size()), &raw,
                              &tail);
  Stmt stmt(raw);
  if (rc != SQLITE_OK || !stmt) {
    throw Error(ErrorKind::SqlError, sqlite3_errmsg(db.handle()));
  }
  std::string_view rest(tail, static_cast<std::size_t>(sql.data() + sql.size() - tail));
  for (char c : rest) {
    if (!strings::is_space(c) && c != ';') {
      throw Error(ErrorKind::SqlError, "only one statement may be executed");
    }
  }
  if (!sqlite3_stmt_readonly(stmt.get())) {
    throw Error(ErrorKind::SqlError, "statement is not read-only");
  }

  Deadline deadline{std::chrono::steady_clock::now() + timeout};
  sqlite3_progress_handler(db.handle(), 1000, progress_callback, &deadline);
  struct ResetHandler {
    sqlite3* db;
    ~ResetHandler() { sqlite3_progress_handler(db, 0, nullptr, nullptr); }
  } reset{db.handle()};

  Denotation out;
  out.arity = static_cast<std::size_t>(sqlite3_column_count(stmt.get()));
  while ((rc = sqlite3_step(stmt.get())) == SQLITE_ROW) {
    Row row;
    row.reserve(out.arity);
    for (int i = 0; i < static_cast<int>(out.arity); ++i) {
      switch (sqlite3_column_type(stmt.get(), i)) {
        case SQLITE_INTEGER:
          row.push_back(Cell::number(static_cast<double>(sqlite3_column_int64(stmt.get(), i))));
          break;
        case SQLITE_FLOAT:
          row.push_back(Cell::number(sqlite3_column_double(stmt.get(), i)));
          break;
        case SQLITE_NULL:
          row.push_back(Cell::null());
          break;
        default: {
          const auto* text = reinterpret_cast<const char*>(sqlite3_column_text(stmt.get(), i));
          int len = sqlite3_column_bytes(stmt.get(), i);
          row.push_back(Cell::text(text ? std::string(text, static_cast<std::size_t>(len)) : ""));
        }
      }
    }
    out.rows.push_back(std::move(row));
  }
  if (rc != SQLITE_DONE) {
    if (deadline.fired) {
      throw Error(ErrorKind::ExecutionTimeout,
                  "statement exceeded " + std::to_string(timeout.count()) + " ms");
    }
    throw Error(ErrorKind::SqlError, sqlite3_errmsg(db.handle()));
  }
  return out;
}

bool numbers_close(double x, double y) {
  double scale = std::max({1.0, std::fabs(x), std::fabs(y)});
  return std::fabs(x - y) <= 1e-6 * scale;
}

bool cells_equal(const Cell& a, const Cell& b) {
  if (a.is_null() || b.is_null()) return a.is_null() && b.is_null();
  if (a.is_text() && b.is_text()) {
    return strings::trim_right(a.as_text()) == strings::trim_right(b.as_text());
  }
  auto x = numeric_value(a);
  auto y = numeric_value(b);
  return x && y && numbers_close(*x, *y);
}

bool denotations_equal(const Denotation& a, const Denotation& b, bool allow_empty) {
  if (a.empty() && b.empty()) return allow_empty;
  if (a.empty() != b.empty()) return false;
  if (a.arity != b.arity) return false;
  return covered(a, b) && covered(b, a);
}

}  // namespace sqlsynth
