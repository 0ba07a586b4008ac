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

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sqlsynth/join_planner.hpp"
#include "sqlsynth/qdmr.hpp"
#include "sqlsynth/schema.hpp"

namespace sqlsynth {

struct Expr {
  std::optional<AggregateFn> fn;
  ColumnRef column;

  bool operator==(const Expr& o) const { return fn == o.fn && column == o.column; }
};

struct SqlQuery;
using QueryPtr = std::shared_ptr<const SqlQuery>;

struct Predicate;

struct JoinPredicate {
  ColumnRef source;
  ColumnRef target;
};

struct ComparePredicate {
  Expr lhs;
  Comparator cmp = Comparator::Eq;
  Literal value;
};

struct InPredicate {
  Expr lhs;
  QueryPtr subquery;
  bool negated = false;
};

/// Disjunction of conjunctions.
struct OrPredicate {
  std::vector<std::vector<Predicate>> branches;
};

struct Predicate {
  std::variant<JoinPredicate, ComparePredicate, InPredicate, OrPredicate> node;
};

struct ArithmeticExpr {
  ArithmeticOp op = ArithmeticOp::Add;
  QueryPtr lhs;
  QueryPtr rhs;
};

struct OrderBy {
  Expr expr;
  SortDirection direction = SortDirection::Asc;
};

struct SqlQuery {
  bool distinct = false;
  std::vector<Expr> select;
  std::optional<ArithmeticExpr> arithmetic;  // replaces select and every other clause
  std::vector<std::string> from;
  std::vector<Predicate> where;
  std::optional<ColumnRef> group_by;
  std::vector<Predicate> having;
  std::optional<OrderBy> order_by;
  std::optional<int> limit;
};

enum class Clause { Select, From, Where };

/// Rendered text of one clause, without its keyword. An empty WHERE renders
/// as an empty string.
std::string clause(const SqlQuery& query, Clause which);

std::string render_sql(const SqlQuery& query);
std::string render_predicate(const Predicate& predicate);
std::string render_literal(const Literal& literal);

/// Top-level columns mentioned by the query, in first-mention order.
std::vector<ColumnRef> query_columns(const SqlQuery& query);

struct MappedStep {
  QdmrStep step;
  std::vector<ColumnRef> cols;
  SqlQuery query;
};

/// Column (and stored literal) the current assignment gives a step.
struct StepLink {
  std::optional<ColumnRef> column;
  std::optional<std::string> value;
};

/// Instantiates the mapping rule of the step's operator. `mapped` holds the
/// earlier steps (mapped[i] is step i + 1); `joins` are the join paths
/// between this step and its references.
SqlQuery map_step(const QdmrStep& step, const StepLink& link, const std::vector<JoinPath>& joins,
                  const std::vector<MappedStep>& mapped);

/// True when `query` already pins `column` to a different value, so adding
/// `column = value` would make it unsatisfiable.
bool conflicts_with(const SqlQuery& query, const ColumnRef& column, std::string_view value);

/// FILTER over a step that constrains the same column to another value:
/// keeps the new equality and nests the referenced query under IN.
SqlQuery resolve_self_join(const QdmrStep& step, const StepLink& link,
                           const std::vector<JoinPath>& joins,
                           const std::vector<MappedStep>& mapped);

}  // namespace sqlsynth
