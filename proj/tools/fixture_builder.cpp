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

// Builds a SQLite database file from a SQL script.
// usage: fixture_builder <script.sql> <out.sqlite>

#include <sqlite3.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

int main(int argc, char** argv) {
  if (argc != 3) {
    std::fprintf(stderr, "usage: %s <script.sql> <out.sqlite>\n", argv[0]);
    return 1;
  }
  std::ifstream in(argv[1]);
  if (!in) {
    std::fprintf(stderr, "cannot read %s\n", argv[1]);
    return 2;
  }
  std::stringstream script;
  script << in.rdbuf();

  std::filesystem::path out(argv[2]);
  std::filesystem::path tmp = out;
  tmp += ".tmp";
  std::filesystem::remove(tmp);

  sqlite3* db = nullptr;
  if (sqlite3_open(tmp.c_str(), &db) != SQLITE_OK) {
    std::fprintf(stderr, "cannot create %s: %s\n", tmp.c_str(), sqlite3_errmsg(db));
    sqlite3_close(db);
    return 2;
  }
  char* err = nullptr;
  std::string sql = "BEGIN;\n" + script.str() + "\nCOMMIT;";
  if (sqlite3_exec(db, sql.c_str(), nullptr, nullptr, &err) != SQLITE_OK) {
    std::fprintf(stderr, "%s: %s\n", argv[1], err ? err : "unknown error");
    sqlite3_free(err);
    sqlite3_close(db);
    std::filesystem::remove(tmp);
    return 2;
  }
  sqlite3_close(db);
  std::filesystem::rename(tmp, out);
  return 0;
}
