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

#include "sqlsynth/linker.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "sqlsynth/error.hpp"
#include "strings.hpp"

namespace sqlsynth {

namespace {

std::vector<std::string> unique_lemmas(std::string_view text, const Lemmatizer& lemmatizer) {
  std::vector<std::string> out;
  for (std::string& l : tokenize_and_lemmatize(text, lemmatizer)) {
    if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(std::move(l));
  }
  return out;
}

bool same_set(std::vector<std::string> a, std::vector<std::string> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

bool intersects(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  return std::any_of(a.begin(), a.end(),
                     [&](const std::string& x) { return std::find(b.begin(), b.end(), x) != b.end(); });
}

struct Word {
  std::size_t begin;
  std::size_t end;
  std::string_view text;
};

// Whitespace words with trailing sentence punctuation removed.
std::vector<Word> words_of(std::string_view s) {
  std::vector<Word> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && strings::is_space(s[i])) ++i;
    std::size_t b = i;
    while (i < s.size() && !strings::is_space(s[i])) ++i;
    std::size_t e = i;
    while (e > b && (s[e - 1] == ',' || s[e - 1] == '?' || s[e - 1] == '!' || s[e - 1] == ';' ||
                     s[e - 1] == ':')) {
      --e;
    }
    if (e > b) out.push_back(Word{b, e, s.substr(b, e - b)});
  }
  return out;
}

bool capitalized(std::string_view w) {
  for (char c : w) {
    unsigned char u = static_cast<unsigned char>(c);
    if (std::isalpha(u)) return std::isupper(u) != 0;
    if (std::isdigit(u)) return false;
  }
  return false;
}

bool has_letter(std::string_view w) {
  return std::any_of(w.begin(), w.end(),
                     [](char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; });
}

// Contiguous sub-spans of words[lo, hi), longest first then leftmost.
template <typename Accept>
std::optional<LiteralMention> try_spans(const ValueIndex& index, std::string_view phrase,
                                        const std::vector<Word>& words, std::size_t lo,
                                        std::size_t hi, std::size_t max_len, Accept accept) {
  for (std::size_t len = std::min(hi - lo, max_len); len >= 1; --len) {
    for (std::size_t b = lo; b + len <= hi; ++b) {
      if (!accept(b, b + len)) continue;
      std::string_view span =
          phrase.substr(words[b].begin, words[b + len - 1].end - words[b].begin);
      auto matches = index.lookup(span);
      if (!matches.empty()) return LiteralMention{std::string(span), std::move(matches)};
    }
  }
  return std::nullopt;
}

}  // namespace

EmbeddingLexicon EmbeddingLexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::FileUnreadable, "cannot read embeddings " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

EmbeddingLexicon EmbeddingLexicon::parse(std::string_view text) {
  EmbeddingLexicon lex;
  std::size_t line_no = 0;
  for (const std::string& line : strings::split(text, '\n')) {
    ++line_no;
    auto parts = strings::split_ws(line);
    if (parts.empty()) continue;
    if (parts.size() < 2) {
      throw Error(ErrorKind::InvalidInput,
                  "embedding line " + std::to_string(line_no) + " has no vector");
    }
    std::vector<float> v;
    v.reserve(parts.size() - 1);
    for (std::size_t i = 1; i < parts.size(); ++i) {
      const std::string& p = parts[i];
      float x = 0;
      auto [ptr, ec] = std::from_chars(p.data(), p.data() + p.size(), x);
      if (ec != std::errc() || ptr != p.data() + p.size()) {
        throw Error(ErrorKind::InvalidInput, "embedding line " + std::to_string(line_no) +
                                                 ": bad number '" + p + "'");
      }
      v.push_back(x);
    }
    if (lex.dimension_ != 0 && v.size() != lex.dimension_) {
      throw Error(ErrorKind::InvalidInput, "embedding line " + std::to_string(line_no) +
                                               " has dimension " + std::to_string(v.size()) +
                                               ", expected " + std::to_string(lex.dimension_));
    }
    lex.add(parts[0], std::move(v));
  }
  return lex;
}

void EmbeddingLexicon::add(std::string_view token, std::vector<float> vector) {
  if (vector.empty()) throw Error(ErrorKind::InvalidInput, "empty embedding vector");
  if (dimension_ == 0) dimension_ = vector.size();
  if (vector.size() != dimension_) {
    throw Error(ErrorKind::InvalidInput, "embedding dimension mismatch for '" +
                                             std::string(token) + "'");
  }
  double norm = 0;
  for (float x : vector) norm += static_cast<double>(x) * x;
  norm = std::sqrt(norm);
  std::string key = strings::lower(token);
  auto it = index_.find(key);
  if (it != index_.end()) {
    std::copy(vector.begin(), vector.end(), data_.begin() + it->second * dimension_);
    norms_[it->second] = norm;
    return;
  }
  index_.emplace(std::move(key), norms_.size());
  data_.insert(data_.end(), vector.begin(), vector.end());
  norms_.push_back(norm);
}

bool EmbeddingLexicon::contains(std::string_view token) const {
  return index_.count(strings::lower(token)) != 0;
}

const float* EmbeddingLexicon::row(std::string_view token, double* norm) const {
  auto it = index_.find(strings::lower(token));
  if (it == index_.end()) return nullptr;
  *norm = norms_[it->second];
  return data_.data() + it->second * dimension_;
}

double EmbeddingLexicon::cosine(std::string_view a, std::string_view b) const {
  double na = 0, nb = 0;
  const float* va = row(a, &na);
  const float* vb = row(b, &nb);
  if (!va || !vb || na == 0 || nb == 0) return 0.0;
  double dot = 0;
  for (std::size_t i = 0; i < dimension_; ++i) dot += static_cast<double>(va[i]) * vb[i];
  return std::clamp(dot / (na * nb), -1.0, 1.0);
}

double phrase_column_similarity(const EmbeddingLexicon& lexicon,
                                const std::vector<std::string>& phrase_lemmas,
                                const ColumnRef& column) {
  if (phrase_lemmas.empty() || column.lemmas.empty()) return 0.0;
  double total = 0;
  for (const std::string& p : phrase_lemmas) {
    for (const std::string& c : column.lemmas) total += lexicon.cosine(p, c);
  }
  return total / static_cast<double>(phrase_lemmas.size() * column.lemmas.size());
}

PhraseLinking rank_columns(const EmbeddingLexicon& lexicon, const SchemaGraph& schema,
                           std::string_view phrase, int step_index,
                           const Lemmatizer& lemmatizer) {
  PhraseLinking out;
  out.step_index = step_index;
  out.phrase = std::string(phrase);
  std::vector<std::string> lemmas = unique_lemmas(phrase, lemmatizer);
  for (const ColumnRef& c : schema.columns()) {
    LinkCandidate cand;
    cand.column = c;
    if (!lemmas.empty() && (same_set(lemmas, c.column_lemmas) || same_set(lemmas, c.lemmas))) {
      cand.tier = 1;
    } else if (intersects(lemmas, c.lemmas)) {
      cand.tier = 2;
    } else {
      cand.tier = 3;
    }
    cand.similarity = phrase_column_similarity(lexicon, lemmas, c);
    out.ranked.push_back(std::move(cand));
  }
  std::stable_sort(out.ranked.begin(), out.ranked.end(),
                   [](const LinkCandidate& a, const LinkCandidate& b) {
                     if (a.tier != b.tier) return a.tier < b.tier;
                     if (a.similarity != b.similarity) return a.similarity > b.similarity;
                     return a.column < b.column;
                   });
  return out;
}

std::optional<LiteralMention> detect_literal(const ValueIndex& index, const QdmrStep& step) {
  if (step.op.kind != OperatorKind::Select && step.op.kind != OperatorKind::Filter) {
    return std::nullopt;
  }
  std::string phrase = step.phrase();
  if (strings::trim(phrase).empty()) return std::nullopt;

  for (char q : {'\'', '"'}) {
    std::size_t open = phrase.find(q);
    while (open != std::string::npos) {
      std::size_t close = phrase.find(q, open + 1);
      if (close == std::string::npos) break;
      std::string inner = phrase.substr(open + 1, close - open - 1);
      auto matches = index.lookup(inner);
      if (!matches.empty()) return LiteralMention{inner, std::move(matches)};
      open = phrase.find(q, close + 1);
    }
  }

  std::vector<Word> words = words_of(phrase);
  for (std::size_t i = 0; i < words.size();) {
    if (!capitalized(words[i].text)) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < words.size() && capitalized(words[j].text)) ++j;
    auto found = try_spans(index, phrase, words, i, j, j - i,
                           [](std::size_t, std::size_t) { return true; });
    if (found) return found;
    i = j;
  }

  if (step.op.kind == OperatorKind::Filter) {
    auto content = [&](std::size_t k) {
      std::string w = strings::lower(words[k].text);
      return has_letter(w) && !is_stop_word(w);
    };
    auto found = try_spans(index, phrase, words, 0, words.size(), 4,
                           [&](std::size_t b, std::size_t e) { return content(b) && content(e - 1); });
    if (found) return found;
  }
  return std::nullopt;
}

std::vector<PhraseSlot> build_slots(const QdmrProgram& program, const SchemaGraph& schema,
                                    const EmbeddingLexicon& lexicon, const ValueIndex* index,
                                    const Lemmatizer& lemmatizer) {
  std::vector<PhraseSlot> slots;
  for (const QdmrStep& step : program.steps) {
    std::string phrase = step.phrase();
    if (strings::trim(phrase).empty()) continue;
    PhraseSlot slot;
    slot.step_index = step.index;
    slot.phrase = phrase;
    std::optional<LiteralMention> lit;
    if (index) lit = detect_literal(*index, step);
    if (lit) {
      slot.kind = SlotKind::Literal;
      slot.literal = lit->text;
      for (ValueMatch& m : lit->matches) {
        slot.candidates.push_back(LinkCandidate{m.column, 1, 1.0});
        slot.stored_values.push_back(std::move(m.stored));
      }
    } else {
      slot.candidates = rank_columns(lexicon, schema, phrase, step.index, lemmatizer).ranked;
    }
    slots.push_back(std::move(slot));
  }
  return slots;
}

const SlotChoice* Assignment::for_step(int step_index) const {
  for (const SlotChoice& c : choices) {
    if (c.step_index == step_index) return &c;
  }
  return nullptr;
}

std::size_t Assignment::rank_sum() const {
  std::size_t s = 0;
  for (std::size_t r : score_rank) s += r;
  return s;
}

AssignmentEnumerator::AssignmentEnumerator(std::vector<PhraseSlot> slots, std::size_t top_k,
                                           std::size_t max_assignments)
    : slots_(std::move(slots)), max_assignments_(max_assignments) {
  if (top_k == 0) throw Error(ErrorKind::InvalidInput, "top_k must be positive");
  bool any_empty = false;
  for (const PhraseSlot& s : slots_) {
    limits_.push_back(std::min(top_k, s.candidates.size()));
    if (s.candidates.empty()) any_empty = true;
  }
  if (!any_empty) {
    std::vector<std::size_t> start(slots_.size(), 0);
    seen_.insert(start);
    frontier_.emplace(0, std::move(start));
  }
}

std::optional<Assignment> AssignmentEnumerator::next() {
  if (frontier_.empty() || produced_ >= max_assignments_) return std::nullopt;
  auto [sum, ranks] = frontier_.top();
  frontier_.pop();
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    if (ranks[i] + 1 >= limits_[i]) continue;
    std::vector<std::size_t> succ = ranks;
    ++succ[i];
    if (seen_.insert(succ).second) frontier_.emplace(sum + 1, std::move(succ));
  }
  ++produced_;
  Assignment a;
  a.score_rank = ranks;
  for (std::size_t i = 0; i < slots_.size(); ++i) {
    const PhraseSlot& s = slots_[i];
    SlotChoice c;
    c.step_index = s.step_index;
    c.phrase = s.phrase;
    c.column = s.candidates[ranks[i]].column;
    if (s.kind == SlotKind::Literal) c.value = s.stored_values[ranks[i]];
    c.rank = ranks[i];
    a.choices.push_back(std::move(c));
  }
  return a;
}

std::vector<Assignment> enumerate_assignments(const std::vector<PhraseSlot>& slots,
                                              std::size_t top_k, std::size_t max_assignments) {
  AssignmentEnumerator e(slots, top_k, max_assignments);
  std::vector<Assignment> out;
  while (auto a = e.next()) out.push_back(std::move(*a));
  return out;
}

}  // namespace sqlsynth
