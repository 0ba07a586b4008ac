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

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace sqlsynth {

/// Rule-based English lemmatizer: plural -s/-es/-ies, -ing and -ed
/// stripping with consonant-doubling and silent-e repair, plus a small
/// irregular table. Entries added with add_override() take precedence.
class Lemmatizer {
 public:
  Lemmatizer();

  /// Reads "word lemma" pairs, one per line; '#' starts a comment.
  static Lemmatizer from_file(const std::filesystem::path& path);

  static const Lemmatizer& builtin();

  void add_override(std::string word, std::string lemma);

  /// `word` must already be lowercase.
  std::string lemma(std::string_view word) const;

 private:
  std::unordered_map<std::string, std::string> overrides_;
};

bool is_stop_word(std::string_view lowercase_word);

/// Lowercased word tokens. Identifiers are split at underscores, camel-case
/// humps and letter/digit boundaries; other punctuation separates tokens.
std::vector<std::string> split_words(std::string_view text);

/// split_words, then stop-word removal, then lemmatization. Order preserved.
std::vector<std::string> tokenize_and_lemmatize(std::string_view text,
                                                const Lemmatizer& lemmatizer = Lemmatizer::builtin());

}  // namespace sqlsynth
