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

// Shared helpers for the unit and acceptance suites.

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "sqlsynth/executor.hpp"
#include "sqlsynth/linker.hpp"
#include "sqlsynth/schema.hpp"

namespace sqlsynth::testing {

std::filesystem::path fixture_path(std::string_view db_id);
std::filesystem::path data_path(std::string_view relative);

/// The bundled lexicon, loaded once.
const EmbeddingLexicon& mini_lexicon();

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(std::string_view prefix = "sqlsynth");
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(std::string_view name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

/// Creates a database file by running `script`.
void build_database(const std::filesystem::path& path, std::string_view script);

/// Opens a fixture database together with its schema and value index.
struct FixtureDb {
  explicit FixtureDb(std::string_view db_id);

  Database db;
  SchemaGraph schema;
  ValueIndex values;
};

/// Single-column denotation, one row per value.
Denotation column_of(const std::vector<Cell>& cells);
Denotation numbers(const std::vector<double>& values);
Denotation texts(const std::vector<std::string>& values);

/// Collapses whitespace runs, drops spaces just inside parentheses and a
/// trailing semicolon.
std::string normalize_sql(std::string_view sql);

}  // namespace sqlsynth::testing
