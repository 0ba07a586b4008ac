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

#include "sqlsynth/error.hpp"
#include "sqlsynth/executor.hpp"
#include "sqlsynth/qdmr.hpp"
#include "sqlsynth/sql.hpp"
#include "sqlsynth/synthesis.hpp"
#include "test_support.hpp"

namespace sqlsynth {
namespace {

using testing::FixtureDb;
using testing::mini_lexicon;

SynthesisOutcome run(const FixtureDb& f, std::string_view qdmr, const Denotation& answer,
                     const SynthesisConfig& config = {}) {
  SearchContext ctx{f.schema, f.db, f.values, mini_lexicon()};
  return search(parse_qdmr(qdmr), answer, ctx, config);
}

template <typename F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Internal;
}

TEST(Heuristics, Distinct) {
  SqlQuery q;
  q.select = {Expr{std::nullopt, make_column_ref("ship", "name", "TEXT")}};
  q.from = {"ship"};
  auto d = heuristic_distinct(q);
  ASSERT_TRUE(d);
  EXPECT_EQ(render_sql(*d), "SELECT DISTINCT ship.name FROM ship");
  EXPECT_FALSE(heuristic_distinct(*d));

  FixtureDb f("products");
  SqlQuery types;
  types.select = {Expr{std::nullopt, f.schema.column("products.product_type_code")}};
  types.from = {"products"};
  EXPECT_EQ(render_sql(*heuristic_distinct(types)),
            "SELECT DISTINCT products.product_type_code FROM products");

  // Inside an aggregate the flag moves into the call.
  SqlQuery count = types;
  count.select[0].fn = AggregateFn::Count;
  EXPECT_EQ(render_sql(*heuristic_distinct(count)),
            "SELECT COUNT(DISTINCT products.product_type_code) FROM products");
}

TEST(Heuristics, SuperlativeRewrite) {
  QdmrProgram p = parse_qdmr("states; size of #1; state with the largest #2; size of #3");
  QdmrProgram r = heuristic_superlative(p);
  EXPECT_EQ(r.step(3).op.kind, OperatorKind::Superlative);
  EXPECT_EQ(r.step(3).op.superlative_fn, AggregateFn::Max);
  EXPECT_EQ(r.step(3).ref_args, (std::vector<int>{1, 2}));

  QdmrProgram low = heuristic_superlative(parse_qdmr("rivers; length of #1; river with smallest #2"));
  EXPECT_EQ(low.step(3).op.superlative_fn, AggregateFn::Min);

  EXPECT_EQ(kind_of([] { heuristic_superlative(parse_qdmr("ships; the name of #1")); }),
            ErrorKind::NoSuperlativeToken);
}

TEST(Heuristics, AggregateSwap) {
  auto variants = heuristic_aggregate_swap(parse_qdmr("ships; number of #1"));
  ASSERT_EQ(variants.size(), 1u);
  EXPECT_EQ(variants[0].step(2).op.aggregate_fn, AggregateFn::Sum);

  auto grouped = heuristic_aggregate_swap(
      parse_qdmr("types; enrollment of #1; sum of #2 for each #1; number of #1"));
  ASSERT_EQ(grouped.size(), 2u);
  EXPECT_EQ(grouped[0].step(3).op.aggregate_fn, AggregateFn::Count);
  EXPECT_EQ(grouped[1].step(4).op.aggregate_fn, AggregateFn::Sum);

  EXPECT_EQ(kind_of([] { heuristic_aggregate_swap(parse_qdmr("ships; average of #1")); }),
            ErrorKind::NoSwappableAggregate);
}

TEST(Synthesis, LinkedProgram) {
  FixtureDb f("ship_death");
  QdmrProgram p = parse_qdmr("ships; injuries; number of #2 for each #1");
  auto slots = build_slots(p, f.schema, mini_lexicon(), &f.values);
  auto first = enumerate_assignments(slots, 20, 1);
  ASSERT_EQ(first.size(), 1u);
  EXPECT_EQ(render_linked_program(p, first[0]),
            "SELECT(ship.id); SELECT(death.injured); GROUP(count, #2, #1)");
}

TEST(Synthesis, EmptyProgramRejected) {
  FixtureDb f("ship_death");
  QdmrProgram empty;
  EXPECT_EQ(kind_of([&] { synthesize(empty, f.schema, {}); }), ErrorKind::EmptyProgram);
}

TEST(Search, FoundOnFirstAssignment) {
  FixtureDb f("ship_death");
  SynthesisOutcome o = run(f, "ships; number of #1", testing::numbers({7}));
  ASSERT_EQ(o.status, SynthesisStatus::Found);
  EXPECT_EQ(o.sql, "SELECT COUNT(ship.id) FROM ship");
  EXPECT_EQ(o.assignments_tried, 1u);
  EXPECT_EQ(o.candidates_tried, 1u);
  EXPECT_TRUE(o.heuristics_applied.empty());
  ASSERT_TRUE(o.program);
  Database db = Database::open_read_only(testing::fixture_path("ship_death"));
  EXPECT_TRUE(denotations_equal(execute(db, o.sql), testing::numbers({7}), false));
}

// The top-ranked author column is the key; only the name column can match
// a list of names, so the search has to move past the first assignment.
TEST(Search, AdvancesToLaterAssignment) {
  FixtureDb f("academic");
  Denotation answer = testing::texts({"Divesh Srivastava", "Surajit Chaudhuri"});
  const char* qdmr =
      "authors; papers by #1; #2 in PVLDB; number of #3 for each #1; #1 where #4 is more than 10";
  QdmrProgram p = parse_qdmr(qdmr);
  auto slots = build_slots(p, f.schema, mini_lexicon(), &f.values);
  auto first = enumerate_assignments(slots, 20, 1);
  ASSERT_FALSE(first.empty());
  EXPECT_EQ(first[0].for_step(1)->column.qualified(), "author.aid");

  SynthesisOutcome o = run(f, qdmr, answer);
  ASSERT_EQ(o.status, SynthesisStatus::Found);
  EXPECT_EQ(o.assignment->for_step(1)->column.qualified(), "author.name");
  EXPECT_GE(o.candidates_tried, 2u);
  EXPECT_NE(o.sql.find("HAVING COUNT(publication.title) > 10"), std::string::npos) << o.sql;
}

TEST(Search, HeuristicsCanBeDisabled) {
  FixtureDb f("products");
  SynthesisConfig none;
  none.heuristics.clear();
  EXPECT_EQ(run(f, "product types; number of #1", testing::numbers({3}), none).status,
            SynthesisStatus::Exhausted);
  SynthesisOutcome o = run(f, "product types; number of #1", testing::numbers({3}));
  ASSERT_EQ(o.status, SynthesisStatus::Found);
  EXPECT_EQ(o.heuristics_applied, std::vector<Heuristic>{Heuristic::Distinct});
}

TEST(Search, Exhausted) {
  FixtureDb f("ship_death");
  SynthesisConfig c;
  c.max_assignments = 5;
  SynthesisOutcome o = run(f, "ships; the name of #1", testing::texts({"no such ship"}), c);
  EXPECT_EQ(o.status, SynthesisStatus::Exhausted);
  EXPECT_LE(o.assignments_tried, 5u);
  EXPECT_TRUE(o.sql.empty());
  EXPECT_TRUE(o.failure_reason);
}

TEST(Search, MappingFailed) {
  FixtureDb f("ship_death");
  // Arithmetic over two multi-row steps maps for no assignment.
  SynthesisOutcome o = run(f, "ships; deaths; sum of #1 and #2", testing::numbers({1}));
  EXPECT_EQ(o.status, SynthesisStatus::MappingFailed);
  EXPECT_TRUE(o.failure_reason);
}

TEST(Search, Timeout) {
  FixtureDb f("ship_death");
  SynthesisConfig c;
  c.timeout = std::chrono::milliseconds(0);
  SynthesisOutcome o = run(f, "ships; the name of #1", testing::texts({"no such ship"}), c);
  EXPECT_EQ(o.status, SynthesisStatus::Timeout);
}

}  // namespace
}  // namespace sqlsynth
