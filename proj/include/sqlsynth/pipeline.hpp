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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sqlsynth/executor.hpp"
#include "sqlsynth/linker.hpp"
#include "sqlsynth/qdmr.hpp"
#include "sqlsynth/synthesis.hpp"

namespace sqlsynth {

struct Example {
  std::string id;
  std::string question;
  std::string qdmr;
  std::string db_id;
  std::string dataset;
  Denotation answer;
  std::optional<std::string> gold_sql;  // carried through, never used for synthesis
  QdmrProgram program;
  std::size_t line = 0;
};

struct RejectedLine {
  std::size_t line = 0;
  std::string id;
  std::string dataset;
  std::string error;  // ErrorKind name
  std::string reason;
  bool non_empty_answer = false;
};

struct ExampleSet {
  std::vector<Example> examples;
  std::vector<RejectedLine> rejects;
};

/// Parses JSON Lines. `default_dataset` tags records without a "dataset".
ExampleSet parse_examples(std::string_view text, const std::string& default_dataset);

/// Throws FileUnreadable, or AllLinesInvalid when no line survives.
/// The dataset defaults to the file stem.
ExampleSet load_examples(const std::filesystem::path& path);

/// Scalars become 1x1, flat lists one row per element, nested lists rows.
Denotation answer_from_json_text(std::string_view json_text);

struct CoverageRow {
  std::string group;
  std::size_t db_count = 0;
  std::size_t examples = 0;
  std::size_t synthesized = 0;
  double coverage = 0.0;
};

struct CoverageTable {
  std::vector<CoverageRow> rows;
  CoverageRow total;
};

struct CoverageReport {
  CoverageTable all;
  CoverageTable non_empty;  // examples whose answer is not empty
};

/// 100 * m / n rounded to one decimal; 0 when n is 0.
double coverage_percent(std::size_t synthesized, std::size_t examples);

/// Row for each dataset group plus the column-sum total row.
CoverageTable coverage_table(const std::vector<CoverageRow>& rows);

CoverageReport build_report(const ExampleSet& set, const std::vector<SynthesisOutcome>& outcomes);

std::string report_json(const CoverageReport& report);

/// Plain-text layout: Dataset / DB # / Examples / Synthesized / Coverage %.
std::string report_text(const CoverageTable& table);

struct CorpusOptions {
  SynthesisConfig config;
  std::size_t jobs = 1;
};

/// Searches each example against `<db_dir>/<db_id>.sqlite`. Outcomes are
/// in input order. Throws FileUnreadable when `db_dir` is not a directory.
std::vector<SynthesisOutcome> run_corpus(const ExampleSet& set, const std::filesystem::path& db_dir,
                                         const EmbeddingLexicon& lexicon,
                                         const CorpusOptions& options,
                                         const Lemmatizer& lemmatizer = Lemmatizer::builtin());

/// Writes one JSON line per Found outcome to `path`, the other outcomes to
/// `<stem>.failures.jsonl` and rejected lines to `<stem>.rejects.jsonl`,
/// both next to `path`.
/// Returns the number of pairs written.
std::size_t emit_training_pairs(const ExampleSet& set, const std::vector<SynthesisOutcome>& outcomes,
                                const std::filesystem::path& path);

void write_text_file(const std::filesystem::path& path, std::string_view content);

}  // namespace sqlsynth
