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

#include "test_support.hpp"

#include <sqlite3.h>

#include <atomic>
#include <cctype>
#include <stdexcept>

#include <unistd.h>

namespace sqlsynth::testing {

std::filesystem::path fixture_path(std::string_view db_id) {
  return std::filesystem::path(SQLSYNTH_FIXTURE_DIR) / (std::string(db_id) + ".sqlite");
}

std::filesystem::path data_path(std::string_view relative) {
  return std::filesystem::path(SQLSYNTH_DATA_DIR) / relative;
}

const EmbeddingLexicon& mini_lexicon() {
  static const EmbeddingLexicon lexicon =
      EmbeddingLexicon::load(data_path("lexicon/mini_glove.txt"));
  return lexicon;
}

TempDir::TempDir(std::string_view prefix) {
  static std::atomic<int> counter{0};
  auto base = std::filesystem::temp_directory_path();
  for (;;) {
    auto candidate = base / (std::string(prefix) + "-" + std::to_string(::getpid()) + "-" +
                             std::to_string(counter++));
    if (std::filesystem::create_directory(candidate)) {
      path_ = candidate;
      return;
    }
  }
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

void build_database(const std::filesystem::path& path, std::string_view script) {
  std::filesystem::remove(path);
  sqlite3* db = nullptr;
  if (sqlite3_open(path.c_str(), &db) != SQLITE_OK) {
    std::string msg = sqlite3_errmsg(db);
    sqlite3_close(db);
    throw std::runtime_error("cannot create " + path.string() + ": " + msg);
  }
  char* err = nullptr;
  std::string sql = "BEGIN;\n" + std::string(script) + "\nCOMMIT;";
  if (sqlite3_exec(db, sql.c_str(), nullptr, nullptr, &err) != SQLITE_OK) {
    std::string msg = err ? err : "unknown error";
    sqlite3_free(err);
    sqlite3_close(db);
    throw std::runtime_error("script failed: " + msg);
  }
  sqlite3_close(db);
}

FixtureDb::FixtureDb(std::string_view db_id)
    : db(Database::open_read_only(fixture_path(db_id))),
      schema(load_schema(db)),
      values(db, schema) {}

Denotation column_of(const std::vector<Cell>& cells) {
  Denotation d;
  d.arity = 1;
  for (const Cell& c : cells) d.rows.push_back({c});
  return d;
}

Denotation numbers(const std::vector<double>& values) {
  std::vector<Cell> cells;
  for (double v : values) cells.push_back(Cell::number(v));
  return column_of(cells);
}

Denotation texts(const std::vector<std::string>& values) {
  std::vector<Cell> cells;
  for (const auto& v : values) cells.push_back(Cell::text(v));
  return column_of(cells);
}

std::string normalize_sql(std::string_view sql) {
  std::string out;
  bool space = false;
  for (char c : sql) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      space = true;
      continue;
    }
    if (space && !out.empty() && out.back() != '(' && c != ')') out.push_back(' ');
    space = false;
    out.push_back(c);
  }
  while (!out.empty() && (out.back() == ';' || out.back() == ' ')) out.pop_back();
  return out;
}

}  // namespace sqlsynth::testing
