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

#include "sqlsynth/lexical.hpp"

#include <array>
#include <cctype>
#include <fstream>
#include <unordered_set>

#include "sqlsynth/error.hpp"
#include "strings.hpp"

namespace sqlsynth {

namespace {

// Function words dropped before linking.
constexpr std::array<std::string_view, 62> kStopWords = {
    "a",      "an",    "the",   "of",    "in",    "on",    "at",      "by",    "for",
    "with",   "from",  "to",    "into",  "through", "and", "or",      "but",   "is",
    "are",    "was",   "were",  "be",    "been",  "being", "am",      "that",  "which",
    "who",    "whom",  "whose", "what",  "where", "when",  "how",     "this",  "these",
    "those",  "it",    "its",   "as",    "than",  "then",  "there",   "their", "they",
    "them",   "all",   "any",   "each",  "both",  "do",    "does",    "did",   "has",
    "have",   "had",   "not",   "no",    "during", "per",  "s",       "return",
};

const std::unordered_map<std::string, std::string>& irregulars() {
  static const std::unordered_map<std::string, std::string> kTable = {
      {"people", "person"},   {"children", "child"}, {"men", "man"},
      {"women", "woman"},     {"mice", "mouse"},     {"feet", "foot"},
      {"teeth", "tooth"},     {"geese", "goose"},    {"data", "data"},
      {"media", "media"},     {"criteria", "criterion"}, {"indices", "index"},
      {"series", "series"},   {"species", "species"}, {"news", "news"},
      {"hundred", "hundred"}, {"bed", "bed"},        {"was", "be"},
      {"were", "be"},         {"is", "be"},          {"are", "be"},
  };
  return kTable;
}

bool is_vowel_at(std::string_view w, std::size_t i) {
  char c = w[i];
  if (c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u') return true;
  // 'y' after a consonant acts as a vowel
  return c == 'y' && i > 0 && !is_vowel_at(w, i - 1);
}

bool has_vowel(std::string_view w) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (is_vowel_at(w, i)) return true;
  }
  return false;
}

// Number of vowel-consonant sequences.
int measure(std::string_view w) {
  int m = 0;
  bool prev_vowel = false;
  for (std::size_t i = 0; i < w.size(); ++i) {
    bool v = is_vowel_at(w, i);
    if (prev_vowel && !v) ++m;
    prev_vowel = v;
  }
  return m;
}

bool ends_cvc(std::string_view w) {
  std::size_t n = w.size();
  if (n < 3) return false;
  char last = w[n - 1];
  return !is_vowel_at(w, n - 3) && is_vowel_at(w, n - 2) && !is_vowel_at(w, n - 1) &&
         last != 'w' && last != 'x' && last != 'y';
}

// Restores the stem left after removing -ed / -ing.
std::string repair_stem(std::string stem) {
  std::size_t n = stem.size();
  if (n >= 2 && stem[n - 1] == stem[n - 2] && !is_vowel_at(stem, n - 1)) {
    char c = stem[n - 1];
    if (c != 'l' && c != 's' && c != 'z') stem.pop_back();
    return stem;
  }
  for (std::string_view suffix : {"at", "bl", "iz", "ur", "us", "iv", "uc", "ac", "ag"}) {
    if (strings::ends_with(stem, suffix)) return stem + "e";
  }
  if (measure(stem) == 1 && ends_cvc(stem)) return stem + "e";
  return stem;
}

std::string rule_lemma(std::string_view w) {
  std::string word(w);
  auto it = irregulars().find(word);
  if (it != irregulars().end()) return it->second;
  if (word.size() <= 3) return word;
  for (char c : word) {
    if (!std::isalpha(static_cast<unsigned char>(c))) return word;
  }

  if (strings::ends_with(word, "ies") && word.size() > 4) {
    return word.substr(0, word.size() - 3) + "y";
  }
  if (strings::ends_with(word, "sses")) return word.substr(0, word.size() - 2);
  for (std::string_view suffix : {"xes", "zes", "ches", "shes"}) {
    if (strings::ends_with(word, suffix)) return word.substr(0, word.size() - 2);
  }
  if (strings::ends_with(word, "ing") && word.size() > 5) {
    std::string stem = word.substr(0, word.size() - 3);
    if (has_vowel(stem)) return repair_stem(stem);
    return word;
  }
  if (strings::ends_with(word, "ed") && word.size() > 4 && !strings::ends_with(word, "eed")) {
    std::string stem = word.substr(0, word.size() - 2);
    if (has_vowel(stem)) return repair_stem(stem);
    return word;
  }
  if (strings::ends_with(word, "s")) {
    for (std::string_view keep : {"ss", "us", "is", "ous"}) {
      if (strings::ends_with(word, keep)) return word;
    }
    return word.substr(0, word.size() - 1);
  }
  return word;
}

}  // namespace

Lemmatizer::Lemmatizer() = default;

Lemmatizer Lemmatizer::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::FileUnreadable, "cannot read lemma file " + path.string());
  Lemmatizer out;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    auto parts = strings::split_ws(line);
    if (parts.empty()) continue;
    if (parts.size() != 2) {
      throw Error(ErrorKind::InvalidInput, "malformed lemma line: '" + line + "'");
    }
    out.add_override(strings::lower(parts[0]), strings::lower(parts[1]));
  }
  return out;
}

const Lemmatizer& Lemmatizer::builtin() {
  static const Lemmatizer kBuiltin;
  return kBuiltin;
}

void Lemmatizer::add_override(std::string word, std::string lemma) {
  overrides_[std::move(word)] = std::move(lemma);
}

std::string Lemmatizer::lemma(std::string_view word) const {
  auto it = overrides_.find(std::string(word));
  if (it != overrides_.end()) return it->second;
  return rule_lemma(word);
}

bool is_stop_word(std::string_view w) {
  for (std::string_view s : kStopWords) {
    if (s == w) return true;
  }
  return false;
}

std::vector<std::string> split_words(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) out.push_back(strings::lower(cur));
    cur.clear();
  };
  auto cls = [](char c) {
    unsigned char u = static_cast<unsigned char>(c);
    if (std::isdigit(u)) return 1;
    if (std::isupper(u)) return 2;
    if (std::islower(u) || u >= 0x80) return 3;
    return 0;
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    int k = cls(c);
    if (k == 0) {
      // possessive "'s" is dropped with the apostrophe
      if (c == '\'' && i + 1 < text.size() && (text[i + 1] == 's' || text[i + 1] == 'S') &&
          (i + 2 == text.size() || cls(text[i + 2]) == 0)) {
        ++i;
      }
      flush();
      continue;
    }
    if (!cur.empty()) {
      int prev = cls(cur.back());
      bool boundary = (prev == 1) != (k == 1);
      if (prev == 3 && k == 2) boundary = true;  // camelCase
      // "XMLFile": split before the last capital of a run followed by lowercase
      if (prev == 2 && k == 2 && i + 1 < text.size() && cls(text[i + 1]) == 3 && cur.size() > 1) {
        boundary = true;
      }
      if (boundary) flush();
    }
    cur.push_back(c);
  }
  flush();
  return out;
}

std::vector<std::string> tokenize_and_lemmatize(std::string_view text,
                                                const Lemmatizer& lemmatizer) {
  std::vector<std::string> out;
  for (const std::string& w : split_words(text)) {
    if (is_stop_word(w)) continue;
    std::string l = lemmatizer.lemma(w);
    if (l.empty() || is_stop_word(l)) continue;
    out.push_back(std::move(l));
  }
  return out;
}

}  // namespace sqlsynth
