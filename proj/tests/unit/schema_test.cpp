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

#include <gtest/gtest.h>

#include <sqlite3.h>

#include "sqlsynth/error.hpp"
#include "sqlsynth/executor.hpp"
#include "sqlsynth/schema.hpp"
#include "test_support.hpp"

namespace sqlsynth {
namespace {

using testing::FixtureDb;

TEST(Schema, LoadsShipDeath) {
  FixtureDb f("ship_death");
  EXPECT_EQ(f.schema.tables(), (std::vector<std::string>{"battle", "ship", "death"}));
  EXPECT_EQ(f.schema.columns().size(), 14u);
  ASSERT_EQ(f.schema.foreign_keys().size(), 2u);
  EXPECT_EQ(f.schema.foreign_keys()[0].source.qualified(), "ship.lost_in_battle");
  EXPECT_EQ(f.schema.foreign_keys()[0].target.qualified(), "battle.id");
  EXPECT_EQ(f.schema.foreign_keys()[1].source.qualified(), "death.caused_by_ship_id");

  const ColumnRef& c = f.schema.column("death.caused_by_ship_id");
  EXPECT_EQ(c.lemmas, (std::vector<std::string>{"death", "cause", "ship", "id"}));
  EXPECT_EQ(c.column_lemmas, (std::vector<std::string>{"cause", "ship", "id"}));
  EXPECT_EQ(c.value_kind, ValueKind::Number);
  EXPECT_EQ(f.schema.column("ship.name").value_kind, ValueKind::Text);
  EXPECT_EQ(f.schema.columns_of("death").size(), 5u);
}

TEST(Schema, Adjacency) {
  FixtureDb f("ship_death");
  const TableGraph& g = table_adjacency(f.schema);
  EXPECT_EQ(g.degree("ship"), 2u);
  EXPECT_EQ(g.degree("battle"), 1u);
  EXPECT_NE(g.edge_between("death", "ship"), nullptr);
  EXPECT_EQ(g.edge_between("death", "battle"), nullptr);

  FixtureDb v("voting_record");
  const TableEdge* e = table_adjacency(v.schema).edge_between("student", "voting_record");
  ASSERT_NE(e, nullptr);
  EXPECT_EQ(e->foreign_keys.size(), 7u);
}

TEST(Schema, ColumnLookup) {
  FixtureDb f("geo");
  EXPECT_NE(f.schema.find_column("STATE", "Population"), nullptr);
  EXPECT_EQ(f.schema.find_column("state", "nope"), nullptr);
  EXPECT_THROW(f.schema.column("state.nope"), Error);
  EXPECT_THROW(f.schema.column("population"), Error);
  EXPECT_TRUE(f.schema.has_table("river"));
  EXPECT_FALSE(f.schema.has_table("lake"));
}

TEST(Schema, ValueKinds) {
  EXPECT_EQ(value_kind_of("INTEGER"), ValueKind::Number);
  EXPECT_EQ(value_kind_of("varchar(20)"), ValueKind::Text);
  EXPECT_EQ(value_kind_of("DOUBLE PRECISION"), ValueKind::Number);
  EXPECT_EQ(value_kind_of("datetime"), ValueKind::Date);
  EXPECT_EQ(value_kind_of("BOOLEAN"), ValueKind::Number);
  EXPECT_EQ(value_kind_of(""), ValueKind::Other);
  EXPECT_EQ(value_kind_of("blob"), ValueKind::Other);
}

TEST(Schema, QuotesIdentifiers) {
  EXPECT_EQ(sql_identifier("name"), "name");
  EXPECT_EQ(sql_identifier("order"), "\"order\"");
  EXPECT_EQ(sql_identifier("first name"), "\"first name\"");
  EXPECT_EQ(sql_identifier("a\"b"), "\"a\"\"b\"");
  EXPECT_EQ(make_column_ref("group", "from", "text").sql(), "\"group\".\"from\"");
}

TEST(Schema, JsonDocument) {
  SchemaGraph s = load_schema_json(R"({
    "tables": [
      {"name": "t", "columns": [{"name": "id", "type": "int"}, {"name": "col", "type": "text"}]},
      {"name": "x", "columns": [{"name": "id", "type": "int"}, {"name": "t_id", "type": "int"}]}
    ],
    "foreign_keys": {"x.t_id": "t.id"}
  })");
  EXPECT_EQ(s.tables(), (std::vector<std::string>{"t", "x"}));
  ASSERT_EQ(s.foreign_keys().size(), 1u);
  EXPECT_EQ(s.foreign_keys()[0].source.qualified(), "x.t_id");

  EXPECT_THROW(load_schema_json(R"({"tables": []})"), Error);
  EXPECT_THROW(load_schema_json("not json"), Error);
  try {
    load_schema_json(R"({"tables": [{"name": "t", "columns": [{"name": "a"}]}],
                         "foreign_keys": {"t.a": "u.b"}})");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnknownColumn);
  }
}

TEST(Schema, NoTables) {
  testing::TempDir dir;
  testing::build_database(dir / "empty.sqlite", "");
  Database db = Database::open_read_only(dir / "empty.sqlite");
  try {
    load_schema(db);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoTables);
  }
}

TEST(Schema, ForeignKeyToImplicitPrimaryKey) {
  testing::TempDir dir;
  testing::build_database(dir / "db.sqlite",
                          "CREATE TABLE a (k INTEGER PRIMARY KEY, v TEXT);"
                          "CREATE TABLE b (id INTEGER, a_k INTEGER REFERENCES a);");
  Database db = Database::open_read_only(dir / "db.sqlite");
  SchemaGraph s = load_schema(db);
  ASSERT_EQ(s.foreign_keys().size(), 1u);
  EXPECT_EQ(s.foreign_keys()[0].target.qualified(), "a.k");
}

TEST(ValueIndex, FindsLiteralColumns) {
  FixtureDb f("geo");
  auto m = f.values.lookup("Mississippi");
  ASSERT_EQ(m.size(), 1u);
  EXPECT_EQ(m[0].column.qualified(), "river.river_name");
  EXPECT_EQ(m[0].stored, "Mississippi");

  // No exact match: the case-insensitive pass finds every spelling.
  auto ci = f.values.lookup("MISSISSIPPI");
  ASSERT_EQ(ci.size(), 3u);
  EXPECT_EQ(ci[0].column.qualified(), "river.river_name");
  EXPECT_EQ(ci[0].stored, "Mississippi");
  EXPECT_EQ(ci[1].column.qualified(), "river.traverse");
  EXPECT_EQ(ci[1].stored, "mississippi");
  EXPECT_EQ(ci[2].column.qualified(), "state.state_name");
  EXPECT_EQ(ci[2].stored, "mississippi");

  EXPECT_TRUE(f.values.lookup("Atlantis").empty());
  EXPECT_TRUE(f.values.lookup("3778").empty());
  EXPECT_TRUE(f.values.lookup("").empty());
  EXPECT_EQ(columns_containing(f.values, "usa").size(), 2u);
}

// Every reported match must actually be stored in that column.
TEST(ValueIndex, Soundness) {
  FixtureDb f("academic");
  for (std::string literal : {"PVLDB", "H. V. Jagadish", "pvldb", "Schema-Free SQL", "nobody"}) {
    for (const ValueMatch& m : f.values.lookup(literal)) {
      std::string sql = "SELECT COUNT(*) FROM " + m.column.table + " WHERE " + m.column.sql() +
                        " = '" + m.stored + "'";
      Denotation d = execute(f.db, sql);
      ASSERT_EQ(d.rows.size(), 1u);
      EXPECT_GT(d.rows[0][0].as_number(), 0) << literal << " in " << m.column.qualified();
    }
  }
}

}  // namespace
}  // namespace sqlsynth
