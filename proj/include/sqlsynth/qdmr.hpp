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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sqlsynth {

enum class OperatorKind {
  Select,
  Filter,
  Project,
  Aggregate,
  Group,
  Superlative,
  Comparative,
  Union,
  UnionColumn,
  Intersect,
  Sort,
  Discard,
  Arithmetic,
};

enum class AggregateFn { Min, Max, Count, Sum, Avg };
enum class Comparator { Gt, Lt, Eq, Ne, Ge, Le };
enum class SortDirection { Asc, Desc };
enum class ArithmeticOp { Add, Sub, Mul, Div };

std::string_view to_string(OperatorKind kind) noexcept;
std::string_view to_string(AggregateFn fn) noexcept;
std::string_view to_string(Comparator cmp) noexcept;
std::string_view to_string(SortDirection dir) noexcept;
std::string_view to_string(ArithmeticOp op) noexcept;

/// A constant appearing in a step (comparison operand) or linked from the
/// database (filter value). Numbers keep their source spelling.
struct Literal {
  std::string text;
  bool numeric = false;

  bool operator==(const Literal&) const = default;
};

/// Parses `text` as a number literal when it spells one, else a string.
Literal make_literal(std::string_view text);

struct QdmrOperator {
  OperatorKind kind = OperatorKind::Select;
  std::optional<AggregateFn> aggregate_fn;    // Aggregate, Group
  std::optional<Comparator> comparator;       // Comparative
  std::optional<SortDirection> direction;     // Sort
  std::optional<AggregateFn> superlative_fn;  // Superlative (Min or Max)
  int superlative_k = 1;
  std::optional<ArithmeticOp> arith_op;       // Arithmetic

  bool operator==(const QdmrOperator&) const = default;
};

struct QdmrStep {
  int index = 0;         // 1-based position in the program
  std::string raw_text;  // step text as it appeared in the source
  QdmrOperator op;
  // Natural-language fragments that still need linking. At most one per
  // step: the selected phrase (Select), the condition (Filter), the projected
  // attribute (Project), the compared attribute when no reference is used
  // (Comparative) or the intersected attribute (Intersect).
  std::vector<std::string> phrase_args;
  std::vector<int> ref_args;     // referenced steps, in order of appearance
  std::optional<Literal> value;  // Comparative operand

  /// The single phrase slot text, or empty when the step has none.
  std::string phrase() const;
};

struct QdmrProgram {
  std::vector<QdmrStep> steps;
  std::string source_text;

  const QdmrStep& step(int index) const { return steps.at(index - 1); }
  std::size_t size() const noexcept { return steps.size(); }
};

/// Splits on ';', strips optional leading "return" tokens, extracts "#k"
/// references and infers each step's operator.
QdmrProgram parse_qdmr(std::string_view text);

/// Re-derives the operator of a step from its utterance template. Throws
/// Error(NonstandardStep) when no template matches.
QdmrOperator infer_op_type(const QdmrStep& step);

std::vector<int> referenced_steps(const QdmrStep& step);

std::string render_program(const QdmrProgram& program);

/// Min for words such as "smallest"/"fewest", Max for "largest"/"most";
/// nullopt for everything else.
std::optional<AggregateFn> superlative_direction(std::string_view word);

}  // namespace sqlsynth
