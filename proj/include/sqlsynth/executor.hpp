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

#include <chrono>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

struct sqlite3;

namespace sqlsynth {

/// One value of a result tuple.
class Cell {
 public:
  Cell() = default;
  static Cell null() { return Cell(); }
  static Cell number(double v) { return Cell(Value(v)); }
  static Cell text(std::string v) { return Cell(Value(std::move(v))); }

  bool is_null() const { return std::holds_alternative<std::monostate>(value_); }
  bool is_number() const { return std::holds_alternative<double>(value_); }
  bool is_text() const { return std::holds_alternative<std::string>(value_); }
  double as_number() const { return std::get<double>(value_); }
  const std::string& as_text() const { return std::get<std::string>(value_); }

  std::string to_string() const;

 private:
  using Value = std::variant<std::monostate, double, std::string>;
  explicit Cell(Value v) : value_(std::move(v)) {}
  Value value_;
};

using Row = std::vector<Cell>;

struct Denotation {
  std::size_t arity = 0;
  std::vector<Row> rows;

  bool empty() const { return rows.empty(); }
};

/// Read-only connection to a single-file SQLite database. Not thread-safe;
/// open one per worker.
class Database {
 public:
  static Database open_read_only(const std::filesystem::path& path);

  Database(Database&&) noexcept = default;
  Database& operator=(Database&&) noexcept = default;
  ~Database();

  sqlite3* handle() const { return db_.get(); }
  const std::filesystem::path& path() const { return path_; }

 private:
  struct Closer {
    void operator()(sqlite3* db) const;
  };
  Database(std::unique_ptr<sqlite3, Closer> db, std::filesystem::path path)
      : db_(std::move(db)), path_(std::move(path)) {}

  std::unique_ptr<sqlite3, Closer> db_;
  std::filesystem::path path_;
};

/// Runs one read-only statement and materializes every row. Throws
/// Error(SqlError) on engine rejection and Error(ExecutionTimeout) when the
/// statement is still running after `timeout`.
Denotation execute(const Database& db, std::string_view sql,
                   std::chrono::milliseconds timeout = std::chrono::seconds(60));

/// |x - y| <= 1e-6 * max(1, |x|, |y|)
bool numbers_close(double x, double y);

bool cells_equal(const Cell& a, const Cell& b);

/// Set-of-tuples comparison: order and duplicates are ignored, numbers are
/// compared with tolerance, text after trimming trailing whitespace. Two empty
/// denotations are equal only when `allow_empty` is set.
bool denotations_equal(const Denotation& a, const Denotation& b, bool allow_empty);

}  // namespace sqlsynth
