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

#include <cstddef>
#include <filesystem>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sqlsynth/lexical.hpp"
#include "sqlsynth/qdmr.hpp"
#include "sqlsynth/schema.hpp"

namespace sqlsynth {

/// Word vectors in GloVe text format: "token v1 ... vd" per line.
class EmbeddingLexicon {
 public:
  EmbeddingLexicon() = default;

  static EmbeddingLexicon load(const std::filesystem::path& path);
  static EmbeddingLexicon parse(std::string_view text);

  /// Adds or replaces a vector. The first vector fixes the dimension.
  void add(std::string_view token, std::vector<float> vector);

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return index_.size(); }
  bool contains(std::string_view token) const;

  /// Cosine similarity; 0 when either token is unknown or has a zero vector.
  double cosine(std::string_view a, std::string_view b) const;

 private:
  const float* row(std::string_view token, double* norm) const;

  std::size_t dimension_ = 0;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<float> data_;
  std::vector<double> norms_;
};

/// Mean cosine over all (phrase lemma, column lemma) pairs.
double phrase_column_similarity(const EmbeddingLexicon& lexicon,
                                const std::vector<std::string>& phrase_lemmas,
                                const ColumnRef& column);

struct LinkCandidate {
  ColumnRef column;
  int tier = 3;  // 1 identical lemmas, 2 shared lemma, 3 rest
  double similarity = 0.0;
};

struct PhraseLinking {
  int step_index = 0;
  std::string phrase;
  std::vector<LinkCandidate> ranked;
};

PhraseLinking rank_columns(const EmbeddingLexicon& lexicon, const SchemaGraph& schema,
                           std::string_view phrase, int step_index = 0,
                           const Lemmatizer& lemmatizer = Lemmatizer::builtin());

enum class SlotKind { Column, Literal };

/// A phrase that needs a column: either linked by similarity or, for
/// literals, by the columns storing the value.
struct PhraseSlot {
  int step_index = 0;
  std::string phrase;
  SlotKind kind = SlotKind::Column;
  std::string literal;  // literal as written in the phrase
  std::vector<LinkCandidate> candidates;
  std::vector<std::string> stored_values;  // per candidate, literal slots only
};

struct LiteralMention {
  std::string text;
  std::vector<ValueMatch> matches;
};

/// Finds a literal value inside a SELECT or FILTER phrase: quoted spans
/// first, then runs of capitalized words (longest, then leftmost), then for
/// FILTER steps lowercase content-word spans.
std::optional<LiteralMention> detect_literal(const ValueIndex& index, const QdmrStep& step);

/// One slot per step carrying a phrase. Without a value index no literals
/// are detected.
std::vector<PhraseSlot> build_slots(const QdmrProgram& program, const SchemaGraph& schema,
                                    const EmbeddingLexicon& lexicon, const ValueIndex* index,
                                    const Lemmatizer& lemmatizer = Lemmatizer::builtin());

struct SlotChoice {
  int step_index = 0;
  std::string phrase;
  ColumnRef column;
  std::optional<std::string> value;  // stored literal for literal slots
  std::size_t rank = 0;              // 0-based position in the slot's candidates
};

struct Assignment {
  std::vector<SlotChoice> choices;      // in slot order
  std::vector<std::size_t> score_rank;  // per-slot rank positions

  const SlotChoice* for_step(int step_index) const;
  std::size_t rank_sum() const;
};

/// Best-first walk over the per-slot top-k cross product: increasing rank
/// sum, ties by lexicographic rank tuple.
class AssignmentEnumerator {
 public:
  AssignmentEnumerator(std::vector<PhraseSlot> slots, std::size_t top_k,
                       std::size_t max_assignments);

  std::optional<Assignment> next();
  std::size_t produced() const { return produced_; }
  const std::vector<PhraseSlot>& slots() const { return slots_; }

 private:
  using Key = std::pair<std::size_t, std::vector<std::size_t>>;

  std::vector<PhraseSlot> slots_;
  std::vector<std::size_t> limits_;
  std::size_t max_assignments_;
  std::size_t produced_ = 0;
  std::priority_queue<Key, std::vector<Key>, std::greater<>> frontier_;
  std::set<std::vector<std::size_t>> seen_;
};

std::vector<Assignment> enumerate_assignments(const std::vector<PhraseSlot>& slots,
                                              std::size_t top_k, std::size_t max_assignments);

}  // namespace sqlsynth
