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


#include "sqlsynth/sqlsynth.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <string>

#include "test_support.hpp"

namespace {

using sqlsynth::testing::data_path;
using sqlsynth::testing::fixture_path;

std::string take(char* p) {
  std::string s = p ? p : "";
  sqs_free(p);
  return s;
}

class CApi : public ::testing::Test {
 protected:
  void SetUp() override {
    ASSERT_EQ(sqs_engine_create(data_path("lexicon/mini_glove.txt").c_str(), nullptr, &engine_),
              SQS_OK)
        << sqs_last_error();
  }
  void TearDown() override { sqs_engine_destroy(engine_); }

  sqs_engine* engine_ = nullptr;
};

TEST(CApiBasics, VersionAndDefaults) {
  EXPECT_STREQ(sqs_version(), "0.1.0");
  sqs_config c;
  sqs_config_default(&c);
  EXPECT_EQ(c.top_k, 20u);
  EXPECT_EQ(c.max_assignments, 1000u);
  EXPECT_EQ(c.timeout_secs, 60.0);
  EXPECT_EQ(c.allow_empty, 0);
  EXPECT_EQ(c.jobs, 1u);
  sqs_free(nullptr);
}

TEST(CApiBasics, EngineErrors) {
  sqs_engine* e = nullptr;
  EXPECT_EQ(sqs_engine_create(nullptr, nullptr, nullptr), SQS_ERR_USAGE);
  EXPECT_EQ(sqs_engine_create("/nonexistent/vectors.txt", nullptr, &e), SQS_ERR_INVALID_INPUT);
  EXPECT_EQ(e, nullptr);
  EXPECT_NE(std::string(sqs_last_error()), "");
  ASSERT_EQ(sqs_engine_create(nullptr, nullptr, &e), SQS_OK);
  EXPECT_STREQ(sqs_last_error(), "");
  sqs_engine_destroy(e);
  sqs_engine_destroy(nullptr);
}

TEST(CApiBasics, ParseQdmr) {
  char* out = nullptr;
  ASSERT_EQ(sqs_parse_qdmr("ships; number of #1", &out), SQS_OK);
  std::string json = take(out);
  EXPECT_NE(json.find("AGGREGATE"), std::string::npos) << json;
  EXPECT_EQ(sqs_parse_qdmr("ships; #5", &out), SQS_ERR_INVALID_INPUT);
  EXPECT_NE(std::string(sqs_last_error()).find("DanglingReference"), std::string::npos);
  EXPECT_EQ(sqs_parse_qdmr(nullptr, &out), SQS_ERR_USAGE);
}

TEST(CApiBasics, ExecuteAndCompare) {
  char* out = nullptr;
  std::string db = fixture_path("ship_death").string();
  ASSERT_EQ(sqs_execute(db.c_str(), "SELECT COUNT(*) FROM ship", 5, &out), SQS_OK);
  EXPECT_EQ(take(out), "[[7.0]]");
  EXPECT_EQ(sqs_execute(db.c_str(), "DELETE FROM ship", 5, &out), SQS_ERR_INVALID_INPUT);
  EXPECT_NE(std::string(sqs_last_error()).find("SqlError"), std::string::npos);

  int equal = -1;
  ASSERT_EQ(sqs_denotations_equal("[1, 2, 2]", "[2, 1.0]", 0, &equal), SQS_OK);
  EXPECT_EQ(equal, 1);
  ASSERT_EQ(sqs_denotations_equal("[]", "[]", 0, &equal), SQS_OK);
  EXPECT_EQ(equal, 0);
  ASSERT_EQ(sqs_denotations_equal("[]", "[]", 1, &equal), SQS_OK);
  EXPECT_EQ(equal, 1);
  EXPECT_EQ(sqs_denotations_equal("[", "[]", 0, &equal), SQS_ERR_INVALID_INPUT);
  EXPECT_EQ(sqs_denotations_equal("[]", "[]", 0, nullptr), SQS_ERR_USAGE);
}

TEST_F(CApi, Link) {
  char* out = nullptr;
  std::string db = fixture_path("ship_death").string();
  ASSERT_EQ(sqs_link(engine_, "ships", db.c_str(), 3, &out), SQS_OK) << sqs_last_error();
  std::string ranking = take(out);
  EXPECT_EQ(ranking.rfind("1\t", 0), 0u) << ranking;
  EXPECT_NE(ranking.find("ship.id"), std::string::npos);
  EXPECT_EQ(std::count(ranking.begin(), ranking.end(), '\n'), 3);
  EXPECT_EQ(sqs_link(engine_, "ships", "/nonexistent.sqlite", 3, &out), SQS_ERR_INVALID_INPUT);
}

TEST_F(CApi, MapWithAssignment) {
  char* out = nullptr;
  std::string db = fixture_path("geo").string();
  ASSERT_EQ(sqs_map(engine_, "the Mississippi river; states #1 runs through", db.c_str(),
                    R"({"2": "state.state_name"})", &out),
            SQS_OK)
      << sqs_last_error();
  std::string sql = take(out);
  EXPECT_NE(sql.find("river.river_name = 'Mississippi'"), std::string::npos) << sql;
  EXPECT_EQ(sqs_map(engine_, "ships", db.c_str(), R"({"1": "nope.nope"})", &out),
            SQS_ERR_INVALID_INPUT);
  EXPECT_EQ(sqs_map(nullptr, "ships", db.c_str(), nullptr, &out), SQS_ERR_USAGE);
}

TEST_F(CApi, SynthCorpus) {
  sqlsynth::testing::TempDir dir;
  sqs_config c;
  sqs_config_default(&c);
  c.jobs = 2;
  char* summary = nullptr;
  std::string pairs = (dir / "pairs.jsonl").string(), report = (dir / "report.json").string();
  ASSERT_EQ(sqs_synth(engine_, data_path("corpus/mini_corpus.jsonl").c_str(),
                      fixture_path("x").parent_path().c_str(), &c, pairs.c_str(), report.c_str(),
                      &summary),
            SQS_OK)
      << sqs_last_error();
  std::string text = take(summary);
  EXPECT_NE(text.find("Total"), std::string::npos) << text;
  EXPECT_TRUE(std::filesystem::exists(pairs));
  EXPECT_TRUE(std::filesystem::exists(report));

  c.top_k = 0;
  EXPECT_EQ(sqs_synth(engine_, "x", "y", &c, nullptr, report.c_str(), &summary), SQS_ERR_USAGE);
}

}  // namespace
