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

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "sqlsynth/error.hpp"
#include "sqlsynth/pipeline.hpp"
#include "test_support.hpp"

namespace sqlsynth {
namespace {

using json = nlohmann::json;

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<json> json_lines(const std::filesystem::path& p) {
  std::vector<json> out;
  std::istringstream in(slurp(p));
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) out.push_back(json::parse(line));
  }
  return out;
}

TEST(Answers, Shapes) {
  Denotation scalar = answer_from_json_text("3");
  EXPECT_EQ(scalar.arity, 1u);
  ASSERT_EQ(scalar.rows.size(), 1u);
  EXPECT_TRUE(scalar.rows[0][0].is_number());

  Denotation flat = answer_from_json_text(R"(["a", "b"])");
  EXPECT_EQ(flat.arity, 1u);
  EXPECT_EQ(flat.rows.size(), 2u);

  Denotation nested = answer_from_json_text(R"([["Public", 119027], ["Private", 1545]])");
  EXPECT_EQ(nested.arity, 2u);
  EXPECT_EQ(nested.rows[1][0].as_text(), "Private");
  EXPECT_EQ(nested.rows[1][1].as_number(), 1545);

  Denotation empty = answer_from_json_text("[]");
  EXPECT_TRUE(empty.empty());

  Denotation with_null = answer_from_json_text("[null]");
  EXPECT_TRUE(with_null.rows[0][0].is_null());

  try {
    answer_from_json_text("[1, ");
    FAIL() << "expected InvalidInput";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidInput);
  }
}

TEST(Examples, ParsesAndRejects) {
  const std::string text =
      R"({"id": "a", "qdmr": "ships; number of #1", "db_id": "ship_death", "answer": 7})"
      "\n\n"
      R"({"id": "b", "qdmr": "ships; number of #4", "db_id": "ship_death", "answer": 7, "dataset": "other"})"
      "\n"
      "not json\n"
      R"({"id": "d", "db_id": "ship_death", "answer": []})"
      "\n"
      R"({"id": 5, "qdmr": "ships", "db_id": "ship_death", "answer": [1], "sql": "SELECT id FROM ship"})"
      "\n";
  ExampleSet set = parse_examples(text, "mini");
  ASSERT_EQ(set.examples.size(), 2u);
  EXPECT_EQ(set.examples[0].id, "a");
  EXPECT_EQ(set.examples[0].dataset, "mini");
  EXPECT_EQ(set.examples[0].line, 1u);
  EXPECT_EQ(set.examples[0].program.size(), 2u);
  EXPECT_EQ(set.examples[1].id, "5");
  EXPECT_EQ(set.examples[1].gold_sql, "SELECT id FROM ship");

  ASSERT_EQ(set.rejects.size(), 3u);
  EXPECT_EQ(set.rejects[0].line, 3u);
  EXPECT_EQ(set.rejects[0].error, "DanglingReference");
  EXPECT_EQ(set.rejects[0].dataset, "other");
  EXPECT_TRUE(set.rejects[0].non_empty_answer);
  EXPECT_EQ(set.rejects[1].error, "InvalidInput");
  EXPECT_EQ(set.rejects[2].id, "d");
  EXPECT_FALSE(set.rejects[2].non_empty_answer);
}

TEST(Examples, LoadErrors) {
  testing::TempDir dir;
  try {
    load_examples(dir / "missing.jsonl");
    FAIL() << "expected FileUnreadable";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::FileUnreadable);
  }
  write_text_file(dir / "bad.jsonl", "{}\n[]\n");
  try {
    load_examples(dir / "bad.jsonl");
    FAIL() << "expected AllLinesInvalid";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::AllLinesInvalid);
  }
  write_text_file(dir / "geo880.jsonl",
                  R"({"id": "a", "qdmr": "states", "db_id": "geo", "answer": ["x"]})");
  EXPECT_EQ(load_examples(dir / "geo880.jsonl").examples[0].dataset, "geo880");
}

TEST(Coverage, Percent) {
  EXPECT_EQ(coverage_percent(0, 0), 0.0);
  EXPECT_EQ(coverage_percent(1, 3), 33.3);
  EXPECT_EQ(coverage_percent(2, 3), 66.7);
  EXPECT_EQ(coverage_percent(1, 8), 12.5);   // 12.5 exactly
  EXPECT_EQ(coverage_percent(1, 16), 6.3);   // 6.25 rounds half up
  EXPECT_EQ(coverage_percent(155, 195), 79.5);
  EXPECT_EQ(coverage_percent(5, 5), 100.0);
}

TEST(Coverage, TableAndText) {
  CoverageTable t = coverage_table({{"a", 1, 10, 7, 0}, {"b", 2, 5, 1, 0}});
  EXPECT_EQ(t.rows[0].coverage, 70.0);
  EXPECT_EQ(t.rows[1].coverage, 20.0);
  EXPECT_EQ(t.total.group, "Total");
  EXPECT_EQ(t.total.db_count, 3u);
  EXPECT_EQ(t.total.examples, 15u);
  EXPECT_EQ(t.total.synthesized, 8u);
  EXPECT_EQ(t.total.coverage, 53.3);
  std::string text = report_text(t);
  EXPECT_NE(text.find("Dataset"), std::string::npos);
  EXPECT_NE(text.find("53.3"), std::string::npos);
  EXPECT_NE(report_text(coverage_table({})).find("(no examples)"), std::string::npos);
}

TEST(Coverage, ReportCountsRejectsAndEmptyAnswers) {
  ExampleSet set = parse_examples(
      R"({"id": "a", "qdmr": "ships", "db_id": "s1", "answer": [1]})"
      "\n"
      R"({"id": "b", "qdmr": "ships", "db_id": "s2", "answer": []})"
      "\n"
      R"({"id": "c", "qdmr": "ships; #9", "db_id": "s1", "answer": [2]})",
      "g");
  std::vector<SynthesisOutcome> outcomes(2);
  outcomes[0].status = SynthesisStatus::Found;
  outcomes[1].status = SynthesisStatus::Exhausted;
  CoverageReport r = build_report(set, outcomes);
  ASSERT_EQ(r.all.rows.size(), 1u);
  EXPECT_EQ(r.all.total.examples, 3u);
  EXPECT_EQ(r.all.total.synthesized, 1u);
  EXPECT_EQ(r.all.total.db_count, 2u);
  EXPECT_EQ(r.non_empty.total.examples, 2u);
  EXPECT_EQ(r.non_empty.total.synthesized, 1u);
  EXPECT_EQ(r.non_empty.total.coverage, 50.0);

  json j = json::parse(report_json(r));
  EXPECT_EQ(j["all"]["total"]["examples"], 3);
  EXPECT_EQ(j["non_empty"]["rows"][0]["dataset"], "g");
}

TEST(Corpus, EmitsPairsFailuresAndRejects) {
  ExampleSet set = parse_examples(
      R"({"id": "ok", "question": "How many ships?", "qdmr": "ships; number of #1", "db_id": "ship_death", "answer": 7, "sql": "SELECT COUNT(*) FROM ship"})"
      "\n"
      R"({"id": "no", "qdmr": "ships; the name of #1", "db_id": "ship_death", "answer": ["Atlantis"]})"
      "\n"
      R"({"id": "bad", "qdmr": "", "db_id": "ship_death", "answer": 1})",
      "t");
  CorpusOptions opts;
  opts.config.max_assignments = 10;
  auto outcomes =
      run_corpus(set, testing::fixture_path("x").parent_path(), testing::mini_lexicon(), opts);
  ASSERT_EQ(outcomes.size(), 2u);
  EXPECT_EQ(outcomes[0].status, SynthesisStatus::Found);
  EXPECT_EQ(outcomes[1].status, SynthesisStatus::Exhausted);

  testing::TempDir dir;
  EXPECT_EQ(emit_training_pairs(set, outcomes, dir / "pairs.jsonl"), 1u);
  auto pairs = json_lines(dir / "pairs.jsonl");
  ASSERT_EQ(pairs.size(), 1u);
  EXPECT_EQ(pairs[0]["id"], "ok");
  EXPECT_EQ(pairs[0]["sql"], "SELECT COUNT(ship.id) FROM ship");
  EXPECT_EQ(pairs[0]["gold_sql"], "SELECT COUNT(*) FROM ship");
  EXPECT_EQ(pairs[0]["assignment"][0]["column"], "ship.id");
  EXPECT_EQ(pairs[0]["assignment"][0]["rank"], 1);
  EXPECT_EQ(pairs[0]["linked_qdmr"], "SELECT(ship.id); AGGREGATE(count, #1)");

  auto failures = json_lines(dir / "pairs.failures.jsonl");
  ASSERT_EQ(failures.size(), 1u);
  EXPECT_EQ(failures[0]["status"], "Exhausted");
  auto rejects = json_lines(dir / "pairs.rejects.jsonl");
  ASSERT_EQ(rejects.size(), 1u);
  EXPECT_EQ(rejects[0]["error"], "EmptyProgram");
}

TEST(Corpus, MissingDatabaseDirectory) {
  ExampleSet set;
  try {
    run_corpus(set, "/nonexistent/dir", testing::mini_lexicon(), {});
    FAIL() << "expected FileUnreadable";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::FileUnreadable);
  }
}

}  // namespace
}  // namespace sqlsynth
