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

#include "sqlsynth/lexical.hpp"
#include "test_support.hpp"

namespace sqlsynth {
namespace {

using Words = std::vector<std::string>;

TEST(Lexical, SplitsIdentifiers) {
  EXPECT_EQ(split_words("caused_by_ship_id"), (Words{"caused", "by", "ship", "id"}));
  EXPECT_EQ(split_words("productTypeCode"), (Words{"product", "type", "code"}));
  EXPECT_EQ(split_words("HTMLPage"), (Words{"html", "page"}));
  EXPECT_EQ(split_words("address2line"), (Words{"address", "2", "line"}));
  EXPECT_EQ(split_words("the ship's name, please"), (Words{"the", "ship", "name", "please"}));
}

TEST(Lexical, GoldenLemmas) {
  EXPECT_EQ(tokenize_and_lemmatize("caused_by_ship_id"), (Words{"cause", "ship", "id"}));
  EXPECT_EQ(tokenize_and_lemmatize("injuries"), (Words{"injury"}));
  EXPECT_EQ(tokenize_and_lemmatize("injured"), (Words{"injure"}));
  EXPECT_EQ(tokenize_and_lemmatize("the populations of"), (Words{"population"}));
  EXPECT_EQ(tokenize_and_lemmatize("states runs through"), (Words{"state", "run"}));
  EXPECT_EQ(tokenize_and_lemmatize("voting_record"), (Words{"vote", "record"}));
  EXPECT_EQ(tokenize_and_lemmatize("product types"), (Words{"product", "type"}));
}

TEST(Lexical, Lemmatizer) {
  const Lemmatizer& l = Lemmatizer::builtin();
  struct Case {
    const char* word;
    const char* lemma;
  } cases[] = {
      {"ships", "ship"},     {"cities", "city"},       {"classes", "class"},
      {"boxes", "box"},      {"churches", "church"},   {"running", "run"},
      {"stopped", "stop"},   {"hoped", "hope"},        {"named", "name"},
      {"located", "locate"}, {"filled", "fill"},       {"agreed", "agreed"},
      {"status", "status"},  {"analysis", "analysis"}, {"famous", "famous"},
      {"address", "address"}, {"people", "person"},    {"children", "child"},
      {"was", "be"},         {"gas", "gas"},           {"id", "id"},
      {"2015s", "2015s"},    {"founded", "found"},     {"killed", "kill"},
  };
  for (const Case& c : cases) EXPECT_EQ(l.lemma(c.word), c.lemma) << c.word;
}

TEST(Lexical, StopWords) {
  for (const char* w : {"the", "of", "a", "by", "in", "with", "return", "for", "each"}) {
    EXPECT_TRUE(is_stop_word(w)) << w;
  }
  for (const char* w : {"ship", "name", "state", "vote"}) EXPECT_FALSE(is_stop_word(w)) << w;
  EXPECT_TRUE(tokenize_and_lemmatize("the of by").empty());
}

TEST(Lexical, Overrides) {
  Lemmatizer l;
  l.add_override("data", "datum");
  EXPECT_EQ(l.lemma("data"), "datum");
  EXPECT_EQ(tokenize_and_lemmatize("data points", l), (Words{"datum", "point"}));

  testing::TempDir dir;
  {
    std::ofstream out(dir / "lemmas.txt");
    out << "# custom lemmas\nmice mouse\n\ngeese goose\n";
  }
  Lemmatizer f = Lemmatizer::from_file(dir / "lemmas.txt");
  EXPECT_EQ(f.lemma("mice"), "mouse");
  EXPECT_EQ(f.lemma("geese"), "goose");
  EXPECT_EQ(f.lemma("ships"), "ship");
}

}  // namespace
}  // namespace sqlsynth
