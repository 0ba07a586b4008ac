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

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "sqlsynth/executor.hpp"
#include "sqlsynth/linker.hpp"
#include "sqlsynth/qdmr.hpp"
#include "sqlsynth/schema.hpp"
#include "sqlsynth/sql.hpp"

namespace sqlsynth {

enum class Heuristic { Distinct, Superlative, AggregateSwap };

std::string_view to_string(Heuristic h) noexcept;

struct SynthesisConfig {
  std::size_t top_k = 20;
  std::size_t max_assignments = 1000;
  std::chrono::milliseconds timeout{60000};
  bool allow_empty_denotation = false;
  std::vector<Heuristic> heuristics{Heuristic::Distinct, Heuristic::Superlative,
                                    Heuristic::AggregateSwap};

  bool enabled(Heuristic h) const;
};

enum class SynthesisStatus { Found, Exhausted, Timeout, MappingFailed };

std::string_view to_string(SynthesisStatus s) noexcept;

struct SynthesisOutcome {
  SynthesisStatus status = SynthesisStatus::Exhausted;
  std::optional<SqlQuery> query;
  std::string sql;                       // rendered query when found
  std::optional<Assignment> assignment;
  std::optional<QdmrProgram> program;    // program the query was built from
  std::vector<Heuristic> heuristics_applied;
  std::size_t candidates_tried = 0;
  std::size_t assignments_tried = 0;
  std::optional<std::string> failure_reason;
};

/// Runs every step through linking, join inference and the mapping rules.
/// Any failure is reported as MappingFailed naming the step.
std::vector<MappedStep> synthesize_steps(const QdmrProgram& program, const SchemaGraph& schema,
                                         const Assignment& assignment);

/// Query of the last step.
SqlQuery synthesize(const QdmrProgram& program, const SchemaGraph& schema,
                    const Assignment& assignment);

/// Sets DISTINCT; nullopt when the query already has it.
std::optional<SqlQuery> heuristic_distinct(const SqlQuery& query);

/// Rewrites PROJECT and FILTER steps that mention a superlative word into
/// "#r where #m is highest|lowest". Throws NoSuperlativeToken when no step
/// qualifies.
QdmrProgram heuristic_superlative(const QdmrProgram& program);

/// One variant per AGGREGATE or GROUP step using count or sum, with that
/// step's function swapped. Throws NoSwappableAggregate when none exist.
std::vector<QdmrProgram> heuristic_aggregate_swap(const QdmrProgram& program);

/// The program with each phrase replaced by its linked column, e.g.
/// "SELECT(ship.id); GROUP(count, #2, #1)".
std::string render_linked_program(const QdmrProgram& program, const Assignment& assignment);

struct SearchContext {
  const SchemaGraph& schema;
  const Database& database;
  const ValueIndex& values;
  const EmbeddingLexicon& lexicon;
  const Lemmatizer& lemmatizer = Lemmatizer::builtin();
};

/// Execution-guided search: assignments best-first, each followed by the
/// enabled heuristics, until a candidate's denotation equals `answer`.
SynthesisOutcome search(const QdmrProgram& program, const Denotation& answer,
                        const SearchContext& context, const SynthesisConfig& config);

}  // namespace sqlsynth
