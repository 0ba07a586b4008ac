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

#include "sqlsynth/qdmr.hpp"

#include <charconv>
#include <cstdlib>
#include <functional>
#include <map>

#include "sqlsynth/error.hpp"
#include "strings.hpp"

namespace sqlsynth {

std::string_view to_string(OperatorKind kind) noexcept {
  switch (kind) {
    case OperatorKind::Select: return "SELECT";
    case OperatorKind::Filter: return "FILTER";
    case OperatorKind::Project: return "PROJECT";
    case OperatorKind::Aggregate: return "AGGREGATE";
    case OperatorKind::Group: return "GROUP";
    case OperatorKind::Superlative: return "SUPERLATIVE";
    case OperatorKind::Comparative: return "COMPARATIVE";
    case OperatorKind::Union: return "UNION";
    case OperatorKind::UnionColumn: return "UNION_COLUMN";
    case OperatorKind::Intersect: return "INTERSECT";
    case OperatorKind::Sort: return "SORT";
    case OperatorKind::Discard: return "DISCARD";
    case OperatorKind::Arithmetic: return "ARITHMETIC";
  }
  return "?";
}

std::string_view to_string(AggregateFn fn) noexcept {
  switch (fn) {
    case AggregateFn::Min: return "min";
    case AggregateFn::Max: return "max";
    case AggregateFn::Count: return "count";
    case AggregateFn::Sum: return "sum";
    case AggregateFn::Avg: return "avg";
  }
  return "?";
}

std::string_view to_string(Comparator cmp) noexcept {
  switch (cmp) {
    case Comparator::Gt: return ">";
    case Comparator::Lt: return "<";
    case Comparator::Eq: return "=";
    case Comparator::Ne: return "<>";
    case Comparator::Ge: return ">=";
    case Comparator::Le: return "<=";
  }
  return "?";
}

std::string_view to_string(SortDirection dir) noexcept {
  return dir == SortDirection::Asc ? "asc" : "desc";
}

std::string_view to_string(ArithmeticOp op) noexcept {
  switch (op) {
    case ArithmeticOp::Add: return "+";
    case ArithmeticOp::Sub: return "-";
    case ArithmeticOp::Mul: return "*";
    case ArithmeticOp::Div: return "/";
  }
  return "?";
}

Literal make_literal(std::string_view text) {
  std::string_view t = strings::trim(text);
  if (t.size() >= 2 && (t.front() == '\'' || t.front() == '"') && t.back() == t.front()) {
    return Literal{std::string(t.substr(1, t.size() - 2)), false};
  }
  double parsed = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), parsed);
  if (!t.empty() && ec == std::errc() && ptr == t.data() + t.size()) {
    return Literal{std::string(t), true};
  }
  return Literal{std::string(t), false};
}

std::string QdmrStep::phrase() const {
  return phrase_args.empty() ? std::string() : strings::join(phrase_args, " ");
}

std::optional<AggregateFn> superlative_direction(std::string_view word) {
  static const std::map<std::string, AggregateFn, std::less<>> kWords = {
      {"highest", AggregateFn::Max},  {"largest", AggregateFn::Max},
      {"biggest", AggregateFn::Max},  {"greatest", AggregateFn::Max},
      {"most", AggregateFn::Max},     {"maximum", AggregateFn::Max},
      {"max", AggregateFn::Max},      {"longest", AggregateFn::Max},
      {"oldest", AggregateFn::Max},   {"tallest", AggregateFn::Max},
      {"top", AggregateFn::Max},      {"lowest", AggregateFn::Min},
      {"smallest", AggregateFn::Min}, {"least", AggregateFn::Min},
      {"fewest", AggregateFn::Min},   {"minimum", AggregateFn::Min},
      {"min", AggregateFn::Min},      {"shortest", AggregateFn::Min},
      {"youngest", AggregateFn::Min}, {"bottom", AggregateFn::Min},
      {"cheapest", AggregateFn::Min},
  };
  auto it = kWords.find(strings::lower(word));
  if (it == kWords.end()) return std::nullopt;
  return it->second;
}

namespace {

struct Token {
  bool is_ref = false;
  int ref = 0;
  std::string text;   // original spelling
  std::string lower;  // lowercased, for keyword matching
};

std::vector<Token> tokenize_step(std::string_view body, int index) {
  std::vector<Token> out;
  std::string word;
  auto flush = [&] {
    if (!word.empty()) {
      out.push_back(Token{false, 0, word, strings::lower(word)});
      word.clear();
    }
  };
  for (std::size_t i = 0; i < body.size();) {
    char c = body[i];
    if (strings::is_space(c)) {
      flush();
      ++i;
    } else if (c == ',') {
      flush();
      out.push_back(Token{false, 0, ",", ","});
      ++i;
    } else if (c == '#') {
      flush();
      std::size_t j = i + 1;
      while (j < body.size() && std::isdigit(static_cast<unsigned char>(body[j]))) ++j;
      if (j == i + 1) {
        throw Error(ErrorKind::MalformedReference,
                    "step " + std::to_string(index) + ": '#' not followed by a step number");
      }
      int k = std::atoi(std::string(body.substr(i + 1, j - i - 1)).c_str());
      if (k < 1 || k >= index) {
        throw Error(ErrorKind::DanglingReference,
                    "step " + std::to_string(index) + " references #" + std::to_string(k));
      }
      out.push_back(Token{true, k, std::string(body.substr(i, j - i)), ""});
      i = j;
    } else {
      word.push_back(c);
      ++i;
    }
  }
  flush();
  return out;
}

struct Analysis {
  QdmrOperator op;
  std::vector<std::string> phrases;
  std::optional<Literal> value;
};

using Tokens = std::vector<Token>;

bool is_word(const Tokens& t, std::size_t i, std::string_view w) {
  return i < t.size() && !t[i].is_ref && t[i].lower == w;
}

bool is_ref(const Tokens& t, std::size_t i) { return i < t.size() && t[i].is_ref; }

std::size_t count_refs(const Tokens& t, std::size_t from = 0, std::size_t to = SIZE_MAX) {
  std::size_t n = 0;
  for (std::size_t i = from; i < std::min(to, t.size()); ++i) n += t[i].is_ref ? 1 : 0;
  return n;
}

std::string words_text(const Tokens& t, std::size_t from, std::size_t to) {
  std::vector<std::string> parts;
  for (std::size_t i = from; i < std::min(to, t.size()); ++i) parts.push_back(t[i].text);
  return strings::join(parts, " ");
}

// Skips an optional leading "the".
std::size_t skip_the(const Tokens& t, std::size_t i) { return is_word(t, i, "the") ? i + 1 : i; }

// "number of", "total number of", "sum of", ... Returns the position after
// "of" and the function, or nullopt.
std::optional<std::pair<std::size_t, AggregateFn>> match_aggregate_head(const Tokens& t,
                                                                        std::size_t i) {
  static const std::map<std::string, AggregateFn, std::less<>> kHeads = {
      {"number", AggregateFn::Count},  {"count", AggregateFn::Count},
      {"sum", AggregateFn::Sum},       {"total", AggregateFn::Sum},
      {"average", AggregateFn::Avg},   {"avg", AggregateFn::Avg},
      {"mean", AggregateFn::Avg},      {"highest", AggregateFn::Max},
      {"largest", AggregateFn::Max},   {"maximum", AggregateFn::Max},
      {"max", AggregateFn::Max},       {"lowest", AggregateFn::Min},
      {"smallest", AggregateFn::Min},  {"minimum", AggregateFn::Min},
      {"min", AggregateFn::Min},
  };
  i = skip_the(t, i);
  if (is_word(t, i, "total") && is_word(t, i + 1, "number")) {
    return is_word(t, i + 2, "of") ? std::optional(std::pair(i + 3, AggregateFn::Count))
                                   : std::nullopt;
  }
  if (i >= t.size() || t[i].is_ref) return std::nullopt;
  auto it = kHeads.find(t[i].lower);
  if (it == kHeads.end() || !is_word(t, i + 1, "of")) return std::nullopt;
  return std::pair(i + 2, it->second);
}

std::optional<Analysis> match_arithmetic(const Tokens& t) {
  static const std::map<std::string, ArithmeticOp, std::less<>> kOps = {
      {"sum", ArithmeticOp::Add},      {"difference", ArithmeticOp::Sub},
      {"multiplication", ArithmeticOp::Mul}, {"product", ArithmeticOp::Mul},
      {"division", ArithmeticOp::Div}, {"ratio", ArithmeticOp::Div},
  };
  std::size_t i = skip_the(t, 0);
  if (i >= t.size() || t[i].is_ref) return std::nullopt;
  auto it = kOps.find(t[i].lower);
  if (it == kOps.end()) return std::nullopt;
  if (!(is_word(t, i + 1, "of") || is_word(t, i + 1, "between"))) return std::nullopt;
  if (!(is_ref(t, i + 2) && (is_word(t, i + 3, "and") || is_word(t, i + 3, ",")) &&
        is_ref(t, i + 4) && t.size() == i + 5)) {
    return std::nullopt;
  }
  Analysis a;
  a.op.kind = OperatorKind::Arithmetic;
  a.op.arith_op = it->second;
  return a;
}

std::optional<Analysis> match_group(const Tokens& t) {
  std::size_t for_pos = SIZE_MAX;
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    if (is_word(t, i, "for") && is_word(t, i + 1, "each")) {
      for_pos = i;
      break;
    }
  }
  if (for_pos == SIZE_MAX) return std::nullopt;
  auto head = match_aggregate_head(t, 0);
  if (!head || head->first + 1 != for_pos || !is_ref(t, head->first)) return std::nullopt;
  if (!(is_ref(t, for_pos + 2) && t.size() == for_pos + 3)) return std::nullopt;
  Analysis a;
  a.op.kind = OperatorKind::Group;
  a.op.aggregate_fn = head->second;
  return a;
}

std::optional<Analysis> match_aggregate(const Tokens& t) {
  auto head = match_aggregate_head(t, 0);
  if (!head || !is_ref(t, head->first) || t.size() != head->first + 1) return std::nullopt;
  Analysis a;
  a.op.kind = OperatorKind::Aggregate;
  a.op.aggregate_fn = head->second;
  return a;
}

std::optional<Analysis> match_superlative(const Tokens& t) {
  if (!(is_ref(t, 0) && is_word(t, 1, "where") && is_ref(t, 2))) return std::nullopt;
  std::size_t i = 3;
  if (is_word(t, i, "is") || is_word(t, i, "are")) ++i;
  i = skip_the(t, i);
  if (i >= t.size() || t[i].is_ref) return std::nullopt;
  auto dir = superlative_direction(t[i].lower);
  if (!dir) return std::nullopt;
  int k = 1;
  ++i;
  if (i < t.size()) {
    if (t[i].is_ref || i + 1 != t.size()) return std::nullopt;
    char* end = nullptr;
    long parsed = std::strtol(t[i].text.c_str(), &end, 10);
    if (*end != '\0' || parsed < 1) return std::nullopt;
    k = static_cast<int>(parsed);
  }
  Analysis a;
  a.op.kind = OperatorKind::Superlative;
  a.op.superlative_fn = *dir;
  a.op.superlative_k = k;
  return a;
}

struct ComparatorPhrase {
  std::vector<std::string_view> words;
  Comparator cmp;
};

// Longest phrases first so that "is not" wins over "is".
const std::vector<ComparatorPhrase>& comparator_phrases() {
  static const std::vector<ComparatorPhrase> kPhrases = [] {
    std::vector<ComparatorPhrase> v;
    const std::vector<std::pair<std::string_view, Comparator>> rel = {
        {"more", Comparator::Gt},   {"higher", Comparator::Gt},  {"larger", Comparator::Gt},
        {"greater", Comparator::Gt}, {"bigger", Comparator::Gt}, {"less", Comparator::Lt},
        {"lower", Comparator::Lt},  {"smaller", Comparator::Lt}, {"fewer", Comparator::Lt},
    };
    for (std::string_view be : {"is", "are"}) {
      v.push_back({{be, "not", "equal", "to"}, Comparator::Ne});
      v.push_back({{be, "equal", "to"}, Comparator::Eq});
      v.push_back({{be, "at", "least"}, Comparator::Ge});
      v.push_back({{be, "at", "most"}, Comparator::Le});
      for (auto [w, c] : rel) v.push_back({{be, w, "than"}, c});
      v.push_back({{be, "over"}, Comparator::Gt});
      v.push_back({{be, "above"}, Comparator::Gt});
      v.push_back({{be, "under"}, Comparator::Lt});
      v.push_back({{be, "below"}, Comparator::Lt});
      v.push_back({{be, "not"}, Comparator::Ne});
    }
    for (auto [w, c] : rel) v.push_back({{w, "than"}, c});
    v.push_back({{"at", "least"}, Comparator::Ge});
    v.push_back({{"at", "most"}, Comparator::Le});
    v.push_back({{"equals"}, Comparator::Eq});
    v.push_back({{"is"}, Comparator::Eq});
    v.push_back({{"are"}, Comparator::Eq});
    std::stable_sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
      return a.words.size() > b.words.size();
    });
    return v;
  }();
  return kPhrases;
}

std::optional<Analysis> match_comparative(const Tokens& t) {
  if (!(is_ref(t, 0) && is_word(t, 1, "where"))) return std::nullopt;
  for (std::size_t pos = 2; pos < t.size(); ++pos) {
    for (const auto& phrase : comparator_phrases()) {
      bool hit = pos + phrase.words.size() <= t.size();
      for (std::size_t w = 0; hit && w < phrase.words.size(); ++w) {
        hit = is_word(t, pos + w, phrase.words[w]);
      }
      if (!hit) continue;
      std::size_t value_pos = pos + phrase.words.size();
      // operand: a single reference or a reference-free phrase
      bool operand_ref = pos == 3 && is_ref(t, 2);
      bool operand_phrase = pos > 2 && count_refs(t, 2, pos) == 0;
      if (!(operand_ref || operand_phrase)) return std::nullopt;
      if (value_pos >= t.size() || count_refs(t, value_pos) != 0) return std::nullopt;
      Analysis a;
      a.op.kind = OperatorKind::Comparative;
      a.op.comparator = phrase.cmp;
      a.value = make_literal(words_text(t, value_pos, t.size()));
      if (operand_phrase) a.phrases.push_back(words_text(t, 2, pos));
      return a;
    }
  }
  return std::nullopt;
}

std::optional<Analysis> match_intersect(const Tokens& t) {
  Analysis a;
  a.op.kind = OperatorKind::Intersect;
  // "intersection of #x and #y"
  std::size_t i = skip_the(t, 0);
  if (is_word(t, i, "intersection") && is_word(t, i + 1, "of") && is_ref(t, i + 2) &&
      is_word(t, i + 3, "and") && is_ref(t, i + 4) && t.size() == i + 5) {
    return a;
  }
  // "<head> in|of both #x and #y"
  if (t.size() < 6) return std::nullopt;
  std::size_t n = t.size();
  if (!((is_word(t, n - 5, "in") || is_word(t, n - 5, "of")) && is_word(t, n - 4, "both") &&
        is_ref(t, n - 3) && is_word(t, n - 2, "and") && is_ref(t, n - 1))) {
    return std::nullopt;
  }
  std::size_t head_end = n - 5;
  if (head_end == 1 && is_ref(t, 0)) return a;
  if (count_refs(t, 0, head_end) != 0) return std::nullopt;
  a.phrases.push_back(words_text(t, 0, head_end));
  return a;
}

std::optional<Analysis> match_union(const Tokens& t) {
  bool both = t.size() == 4 && is_word(t, 0, "both") && is_ref(t, 1) && is_word(t, 2, "and") &&
              is_ref(t, 3);
  bool pair = t.size() == 3 && is_ref(t, 0) && (is_word(t, 1, ",") || is_word(t, 1, "or")) &&
              is_ref(t, 2);
  if (!both && !pair) return std::nullopt;
  Analysis a;
  a.op.kind = OperatorKind::Union;
  return a;
}

std::optional<Analysis> match_union_column(const Tokens& t) {
  if (!(t.size() == 3 && is_ref(t, 0) && is_word(t, 1, "and") && is_ref(t, 2))) {
    return std::nullopt;
  }
  Analysis a;
  a.op.kind = OperatorKind::UnionColumn;
  return a;
}

std::optional<Analysis> match_sort(const Tokens& t) {
  if (!(is_ref(t, 0) && (is_word(t, 1, "sorted") || is_word(t, 1, "ordered")) &&
        is_word(t, 2, "by") && is_ref(t, 3))) {
    return std::nullopt;
  }
  Analysis a;
  a.op.kind = OperatorKind::Sort;
  a.op.direction = SortDirection::Asc;
  for (std::size_t i = 4; i < t.size(); ++i) {
    if (t[i].is_ref) return std::nullopt;
    const std::string& w = t[i].lower;
    if (w == "descending" || w == "desc" || w == "decreasing") {
      a.op.direction = SortDirection::Desc;
    } else if (w == "ascending" || w == "asc" || w == "increasing") {
      a.op.direction = SortDirection::Asc;
    } else if (w != "in" && w != "order") {
      return std::nullopt;
    }
  }
  return a;
}

std::optional<Analysis> match_discard(const Tokens& t) {
  bool besides = t.size() == 3 && is_ref(t, 0) && is_word(t, 1, "besides") && is_ref(t, 2);
  bool not_in = t.size() == 4 && is_ref(t, 0) && is_word(t, 1, "not") && is_word(t, 2, "in") &&
                is_ref(t, 3);
  if (!besides && !not_in) return std::nullopt;
  Analysis a;
  a.op.kind = OperatorKind::Discard;
  return a;
}

std::string phrase_words(const Tokens& t, std::size_t from, std::size_t to) {
  std::vector<std::string> parts;
  for (std::size_t i = from; i < std::min(to, t.size()); ++i) {
    if (!t[i].is_ref) parts.push_back(t[i].text);
  }
  return strings::join(parts, " ");
}

// "#x <condition>" where the condition is free text. Extra references are
// tolerated so that superlative rewrites can target "#1 with the largest #2".
std::optional<Analysis> match_filter(const Tokens& t) {
  if (!is_ref(t, 0) || t.size() < 2) return std::nullopt;
  std::size_t start = is_word(t, 1, "where") ? 2 : 1;
  std::string cond = phrase_words(t, start, t.size());
  if (strings::trim(cond).empty()) return std::nullopt;
  Analysis a;
  a.op.kind = OperatorKind::Filter;
  a.phrases.push_back(cond);
  return a;
}

std::optional<Analysis> match_project(const Tokens& t) {
  if (count_refs(t) != 1 || is_ref(t, 0)) return std::nullopt;
  Analysis a;
  a.op.kind = OperatorKind::Project;
  a.phrases.push_back(phrase_words(t, 0, t.size()));
  return a;
}

Analysis analyze(const Tokens& t, std::string_view body, int index) {
  if (count_refs(t) == 0) {
    Analysis a;
    a.op.kind = OperatorKind::Select;
    a.phrases.emplace_back(strings::trim(body));
    return a;
  }
  using Matcher = std::optional<Analysis> (*)(const Tokens&);
  static constexpr Matcher kTable[] = {
      match_arithmetic,   match_group,    match_aggregate, match_superlative,
      match_comparative,  match_intersect, match_union,    match_union_column,
      match_sort,         match_discard,  match_filter,    match_project,
  };
  for (Matcher m : kTable) {
    if (auto a = m(t)) return *a;
  }
  throw Error(ErrorKind::NonstandardStep,
              "step " + std::to_string(index) + " matches no operation template: '" +
                  std::string(body) + "'");
}

std::string_view strip_return(std::string_view text) {
  std::string_view t = strings::trim(text);
  if (t.size() >= 6 && strings::iequals(t.substr(0, 6), "return") &&
      (t.size() == 6 || strings::is_space(t[6]))) {
    t = strings::trim(t.substr(6));
  }
  return t;
}

std::vector<int> refs_in_order(const Tokens& t) {
  std::vector<int> refs;
  for (const Token& tok : t) {
    if (tok.is_ref && std::find(refs.begin(), refs.end(), tok.ref) == refs.end()) {
      refs.push_back(tok.ref);
    }
  }
  return refs;
}

}  // namespace

QdmrProgram parse_qdmr(std::string_view text) {
  QdmrProgram program;
  program.source_text = std::string(text);
  std::vector<std::string> parts = strings::split(text, ';');
  // A trailing delimiter does not introduce an empty step.
  while (!parts.empty() && strings::trim(parts.back()).empty()) parts.pop_back();
  if (parts.empty()) throw Error(ErrorKind::EmptyProgram, "QDMR has no steps");
  for (std::size_t i = 0; i < parts.size(); ++i) {
    int index = static_cast<int>(i) + 1;
    std::string_view body = strip_return(parts[i]);
    if (body.empty()) {
      throw Error(ErrorKind::NonstandardStep, "step " + std::to_string(index) + " is empty");
    }
    Tokens tokens = tokenize_step(body, index);
    Analysis a = analyze(tokens, body, index);
    QdmrStep step;
    step.index = index;
    step.raw_text = std::string(strings::trim(parts[i]));
    step.op = a.op;
    step.phrase_args = std::move(a.phrases);
    step.ref_args = refs_in_order(tokens);
    step.value = std::move(a.value);
    program.steps.push_back(std::move(step));
  }
  return program;
}

QdmrOperator infer_op_type(const QdmrStep& step) {
  std::string_view body = strip_return(step.raw_text);
  return analyze(tokenize_step(body, step.index), body, step.index).op;
}

std::vector<int> referenced_steps(const QdmrStep& step) {
  std::string_view body = strip_return(step.raw_text);
  return refs_in_order(tokenize_step(body, step.index));
}

std::string render_program(const QdmrProgram& program) {
  std::vector<std::string> parts;
  parts.reserve(program.steps.size());
  for (const QdmrStep& s : program.steps) parts.push_back(s.raw_text);
  return strings::join(parts, "; ");
}

}  // namespace sqlsynth
