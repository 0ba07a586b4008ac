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

#include "sqlsynth/sql.hpp"

#include <algorithm>

#include "sqlsynth/error.hpp"
#include "strings.hpp"

namespace sqlsynth {

namespace {

std::string fn_name(AggregateFn fn) {
  switch (fn) {
    case AggregateFn::Min: return "MIN";
    case AggregateFn::Max: return "MAX";
    case AggregateFn::Count: return "COUNT";
    case AggregateFn::Sum: return "SUM";
    case AggregateFn::Avg: return "AVG";
  }
  return "?";
}

std::string op_symbol(ArithmeticOp op) {
  switch (op) {
    case ArithmeticOp::Add: return "+";
    case ArithmeticOp::Sub: return "-";
    case ArithmeticOp::Mul: return "*";
    case ArithmeticOp::Div: return "/";
  }
  return "?";
}

std::string render_expr(const Expr& e, bool distinct_argument) {
  if (!e.fn) return e.column.sql();
  return fn_name(*e.fn) + "(" + (distinct_argument ? "DISTINCT " : "") + e.column.sql() + ")";
}

bool has_aggregate(const SqlQuery& q) {
  return std::any_of(q.select.begin(), q.select.end(), [](const Expr& e) { return e.fn.has_value(); });
}

std::string render_conjunction(const std::vector<Predicate>& preds) {
  std::vector<std::string> parts;
  for (const Predicate& p : preds) parts.push_back(render_predicate(p));
  return strings::join(parts, " AND ");
}

// ---- rule helpers -------------------------------------------------------

bool is_flat(const SqlQuery& q) {
  return !q.group_by && q.having.empty() && !q.order_by && !q.limit && !q.arithmetic &&
         !q.distinct;
}

bool is_join(const Predicate& p) { return std::holds_alternative<JoinPredicate>(p.node); }

// Flat and constrained by joins only.
bool is_plain(const SqlQuery& q) {
  return is_flat(q) && std::all_of(q.where.begin(), q.where.end(), is_join);
}

// Grouped aggregate whose rows are still defined by WHERE alone.
bool is_grouped(const SqlQuery& q) {
  return q.group_by && q.having.empty() && !q.order_by && !q.limit && !q.arithmetic;
}

std::vector<Predicate> join_preds(const SqlQuery& q) {
  std::vector<Predicate> out;
  for (const Predicate& p : q.where) {
    if (is_join(p)) out.push_back(p);
  }
  return out;
}

std::vector<Predicate> non_join_preds(const std::vector<Predicate>& preds) {
  std::vector<Predicate> out;
  for (const Predicate& p : preds) {
    if (!is_join(p)) out.push_back(p);
  }
  return out;
}

const Expr& first_column(const SqlQuery& q, const QdmrStep& step, std::string_view role) {
  if (q.arithmetic || q.select.empty()) {
    throw Error(ErrorKind::ArityMismatch, "step " + std::to_string(step.index) + ": " +
                                              std::string(role) + " is not a column query");
  }
  return q.select.front();
}

Expr plain_column(const SqlQuery& q, const QdmrStep& step, std::string_view role) {
  const Expr& e = first_column(q, step, role);
  if (e.fn) {
    throw Error(ErrorKind::ArityMismatch, "step " + std::to_string(step.index) + ": " +
                                              std::string(role) + " is an aggregate");
  }
  return e;
}

// #x[WHERE] when #x can be inlined, otherwise its joins plus membership in #x.
std::vector<Predicate> cond(const SqlQuery& q, const QdmrStep& step) {
  if (is_flat(q)) return q.where;
  std::vector<Predicate> out = join_preds(q);
  auto sub = std::make_shared<SqlQuery>(q);
  out.push_back(Predicate{InPredicate{plain_column(q, step, "nested reference"), sub, false}});
  return out;
}

// The quantity a referenced step measures, for ORDER BY and comparisons.
struct Measure {
  Expr expr;
  std::vector<Predicate> where;
  std::optional<ColumnRef> group_by;
};

Measure measure_of(const SqlQuery& y, const QdmrStep& step) {
  if (y.arithmetic || y.select.empty()) {
    throw Error(ErrorKind::ArityMismatch,
                "step " + std::to_string(step.index) + ": measure is not a column query");
  }
  if (is_flat(y) || is_grouped(y)) return Measure{y.select.back(), y.where, y.group_by};
  return Measure{plain_column(y, step, "measure"), cond(y, step), std::nullopt};
}

void add_tables(SqlQuery& q, const std::vector<std::string>& tables) {
  for (const std::string& t : tables) {
    if (std::find(q.from.begin(), q.from.end(), t) == q.from.end()) q.from.push_back(t);
  }
}

void add_table(SqlQuery& q, const std::string& t) { add_tables(q, {t}); }

void add_preds(std::vector<Predicate>& dst, const std::vector<Predicate>& preds) {
  for (const Predicate& p : preds) {
    std::string text = render_predicate(p);
    bool dup = std::any_of(dst.begin(), dst.end(),
                           [&](const Predicate& d) { return render_predicate(d) == text; });
    if (!dup) dst.push_back(p);
  }
}

std::vector<Predicate> path_preds(const std::vector<JoinPath>& joins) {
  std::vector<Predicate> out;
  for (const JoinPath& j : joins) {
    for (const JoinEdge& e : j.edges) add_preds(out, {Predicate{JoinPredicate{e.source, e.target}}});
  }
  return out;
}

void add_path_tables(SqlQuery& q, const std::vector<JoinPath>& joins) {
  for (const JoinPath& j : joins) add_tables(q, j.tables);
}

void set_group(SqlQuery& q, const std::optional<ColumnRef>& g, const QdmrStep& step) {
  if (!g) return;
  if (q.group_by && !(*q.group_by == *g)) {
    throw Error(ErrorKind::ArityMismatch,
                "step " + std::to_string(step.index) + ": references group by different keys");
  }
  q.group_by = g;
}

const SqlQuery& ref_query(const std::vector<MappedStep>& mapped, const QdmrStep& step,
                          std::size_t pos) {
  if (pos >= step.ref_args.size()) {
    throw Error(ErrorKind::ArityMismatch, "step " + std::to_string(step.index) + " needs " +
                                              std::to_string(pos + 1) + " references");
  }
  int r = step.ref_args[pos];
  if (r < 1 || r >= step.index || static_cast<std::size_t>(r) > mapped.size()) {
    throw Error(ErrorKind::UnmappedReference, "step " + std::to_string(step.index) +
                                                  " references unmapped step #" +
                                                  std::to_string(r));
  }
  return mapped[r - 1].query;
}

const ColumnRef& linked_column(const StepLink& link, const QdmrStep& step) {
  if (!link.column) {
    throw Error(ErrorKind::MappingFailed,
                "step " + std::to_string(step.index) + " has no linked column");
  }
  return *link.column;
}

void require_refs(const QdmrStep& step, std::size_t n) {
  if (step.ref_args.size() != n) {
    throw Error(ErrorKind::ArityMismatch, "step " + std::to_string(step.index) + " (" +
                                              std::string(to_string(step.op.kind)) +
                                              ") expects " + std::to_string(n) +
                                              " references, got " +
                                              std::to_string(step.ref_args.size()));
  }
}

Predicate equals_value(const ColumnRef& col, const std::string& value) {
  return Predicate{ComparePredicate{Expr{std::nullopt, col}, Comparator::Eq, Literal{value, false}}};
}

// ---- rules ----------------------------------------------------------------

SqlQuery map_select(const QdmrStep& step, const StepLink& link) {
  const ColumnRef& col = linked_column(link, step);
  SqlQuery q;
  q.select.push_back(Expr{std::nullopt, col});
  q.from.push_back(col.table);
  if (link.value) q.where.push_back(equals_value(col, *link.value));
  return q;
}

// #x carried into a new query that keeps its rows.
SqlQuery carry(const SqlQuery& x, const QdmrStep& step) {
  SqlQuery q;
  q.select = x.select;
  q.from = x.from;
  if (is_flat(x)) {
    q.where = x.where;
  } else {
    q.select = {plain_column(x, step, "filtered reference")};
    q.where = cond(x, step);
  }
  return q;
}

SqlQuery map_filter(const QdmrStep& step, const StepLink& link, const std::vector<JoinPath>& joins,
                    const std::vector<MappedStep>& mapped) {
  require_refs(step, 1);
  const SqlQuery& x = ref_query(mapped, step, 0);
  if (link.value && link.column && conflicts_with(x, *link.column, *link.value)) {
    return resolve_self_join(step, link, joins, mapped);
  }
  SqlQuery q = carry(x, step);
  add_path_tables(q, joins);
  add_preds(q.where, path_preds(joins));
  if (link.column) add_table(q, link.column->table);
  if (link.value) add_preds(q.where, {equals_value(*link.column, *link.value)});
  return q;
}

SqlQuery map_project(const QdmrStep& step, const StepLink& link,
                     const std::vector<JoinPath>& joins, const std::vector<MappedStep>& mapped) {
  require_refs(step, 1);
  const ColumnRef& col = linked_column(link, step);
  const SqlQuery& x = ref_query(mapped, step, 0);
  SqlQuery q;
  q.select.push_back(Expr{std::nullopt, col});
  q.from.push_back(col.table);
  add_tables(q, x.from);
  add_path_tables(q, joins);
  if (is_plain(x)) {
    add_preds(q.where, x.where);
    add_preds(q.where, path_preds(joins));
  } else {
    add_preds(q.where, path_preds(joins));
    add_preds(q.where, join_preds(x));
    auto sub = std::make_shared<SqlQuery>(x);
    add_preds(q.where, {Predicate{InPredicate{plain_column(x, step, "projected reference"), sub, false}}});
  }
  return q;
}

SqlQuery map_aggregate(const QdmrStep& step, const std::vector<MappedStep>& mapped) {
  require_refs(step, 1);
  const SqlQuery& x = ref_query(mapped, step, 0);
  SqlQuery q;
  Expr e = plain_column(x, step, "aggregated reference");
  e.fn = step.op.aggregate_fn;
  q.select.push_back(e);
  q.from = x.from;
  q.where = cond(x, step);
  return q;
}

SqlQuery map_group(const QdmrStep& step, const std::vector<JoinPath>& joins,
                   const std::vector<MappedStep>& mapped) {
  require_refs(step, 2);
  const SqlQuery& x = ref_query(mapped, step, 0);
  const SqlQuery& y = ref_query(mapped, step, 1);
  SqlQuery q;
  Expr e = plain_column(x, step, "aggregated reference");
  e.fn = step.op.aggregate_fn;
  q.select.push_back(e);
  add_tables(q, x.from);
  add_tables(q, y.from);
  add_path_tables(q, joins);
  add_preds(q.where, path_preds(joins));
  add_preds(q.where, cond(x, step));
  add_preds(q.where, cond(y, step));
  q.group_by = plain_column(y, step, "grouping reference").column;
  return q;
}

SqlQuery map_superlative(const QdmrStep& step, const std::vector<JoinPath>& joins,
                         const std::vector<MappedStep>& mapped) {
  require_refs(step, 2);
  const SqlQuery& x = ref_query(mapped, step, 0);
  const SqlQuery& y = ref_query(mapped, step, 1);
  Measure m = measure_of(y, step);
  SqlQuery q;
  q.select = {plain_column(x, step, "superlative reference")};
  add_tables(q, x.from);
  add_tables(q, y.from);
  add_path_tables(q, joins);
  add_preds(q.where, path_preds(joins));
  add_preds(q.where, cond(x, step));
  add_preds(q.where, m.where);
  set_group(q, m.group_by, step);
  bool max = step.op.superlative_fn.value_or(AggregateFn::Max) == AggregateFn::Max;
  q.order_by = OrderBy{m.expr, max ? SortDirection::Desc : SortDirection::Asc};
  q.limit = step.op.superlative_k;
  return q;
}

SqlQuery map_comparative(const QdmrStep& step, const StepLink& link,
                         const std::vector<JoinPath>& joins,
                         const std::vector<MappedStep>& mapped) {
  if (step.ref_args.empty() || step.ref_args.size() > 2) require_refs(step, 2);
  if (!step.value) {
    throw Error(ErrorKind::MappingFailed,
                "step " + std::to_string(step.index) + " has no comparison value");
  }
  const SqlQuery& x = ref_query(mapped, step, 0);
  Measure m;
  std::vector<std::string> extra_tables;
  if (step.ref_args.size() == 2) {
    const SqlQuery& y = ref_query(mapped, step, 1);
    m = measure_of(y, step);
    extra_tables = y.from;
  } else {
    const ColumnRef& col = linked_column(link, step);
    m.expr = Expr{std::nullopt, col};
    extra_tables = {col.table};
  }
  SqlQuery q;
  q.select = {plain_column(x, step, "compared reference")};
  add_tables(q, x.from);
  add_tables(q, extra_tables);
  add_path_tables(q, joins);
  add_preds(q.where, path_preds(joins));
  add_preds(q.where, cond(x, step));
  add_preds(q.where, m.where);
  Predicate cmp{ComparePredicate{m.expr, *step.op.comparator, *step.value}};
  if (m.expr.fn) {
    set_group(q, m.group_by, step);
    q.having.push_back(cmp);
  } else {
    q.where.push_back(cmp);
  }
  return q;
}

SqlQuery map_union(const QdmrStep& step, const std::vector<JoinPath>& joins,
                   const std::vector<MappedStep>& mapped) {
  if (step.ref_args.size() < 2) require_refs(step, 2);
  SqlQuery q;
  q.select = ref_query(mapped, step, 0).select;
  add_path_tables(q, joins);
  std::vector<Predicate> shared = path_preds(joins);
  OrPredicate disjunction;
  bool unconstrained = false;
  for (std::size_t i = 0; i < step.ref_args.size(); ++i) {
    const SqlQuery& r = ref_query(mapped, step, i);
    add_tables(q, r.from);
    std::vector<Predicate> c = cond(r, step);
    add_preds(shared, join_preds(r));
    std::vector<Predicate> own = non_join_preds(c);
    if (own.empty()) unconstrained = true;
    disjunction.branches.push_back(std::move(own));
  }
  // Front-load the tables so FROM follows the references in order.
  std::vector<std::string> ordered;
  for (std::size_t i = 0; i < step.ref_args.size(); ++i) {
    for (const std::string& t : ref_query(mapped, step, i).from) {
      if (std::find(ordered.begin(), ordered.end(), t) == ordered.end()) ordered.push_back(t);
    }
  }
  for (const std::string& t : q.from) {
    if (std::find(ordered.begin(), ordered.end(), t) == ordered.end()) ordered.push_back(t);
  }
  q.from = ordered;
  add_preds(q.where, shared);
  if (!unconstrained) q.where.push_back(Predicate{std::move(disjunction)});
  return q;
}

SqlQuery map_union_column(const QdmrStep& step, const std::vector<JoinPath>& joins,
                          const std::vector<MappedStep>& mapped) {
  if (step.ref_args.size() < 2) require_refs(step, 2);
  SqlQuery q;
  for (std::size_t i = 0; i < step.ref_args.size(); ++i) {
    const SqlQuery& r = ref_query(mapped, step, i);
    add_tables(q, r.from);
  }
  add_path_tables(q, joins);
  add_preds(q.where, path_preds(joins));
  for (std::size_t i = 0; i < step.ref_args.size(); ++i) {
    const SqlQuery& r = ref_query(mapped, step, i);
    if (is_flat(r) || is_grouped(r)) {
      if (r.arithmetic || r.select.empty()) {
        throw Error(ErrorKind::ArityMismatch, "step " + std::to_string(step.index) +
                                                  ": combined reference is not a column query");
      }
      q.select.insert(q.select.end(), r.select.begin(), r.select.end());
      add_preds(q.where, r.where);
      set_group(q, r.group_by, step);
    } else {
      q.select.push_back(plain_column(r, step, "combined reference"));
      add_preds(q.where, cond(r, step));
    }
  }
  return q;
}

SqlQuery map_intersect(const QdmrStep& step, const StepLink& link,
                       const std::vector<JoinPath>& joins, const std::vector<MappedStep>& mapped) {
  // head: linked phrase, a leading reference (three refs) or the first operand
  std::size_t first = 0;
  Expr head;
  const SqlQuery* head_query = nullptr;
  if (link.column) {
    require_refs(step, 2);
    head = Expr{std::nullopt, *link.column};
  } else if (step.ref_args.size() == 3) {
    head_query = &ref_query(mapped, step, 0);
    head = plain_column(*head_query, step, "intersection head");
    first = 1;
  } else {
    require_refs(step, 2);
    head = plain_column(ref_query(mapped, step, 0), step, "intersection head");
  }
  const SqlQuery& x = ref_query(mapped, step, first);
  const SqlQuery& y = ref_query(mapped, step, first + 1);

  SqlQuery base;
  base.select = {head};
  add_table(base, head.column.table);
  if (head_query) add_tables(base, head_query->from);
  add_tables(base, x.from);
  add_tables(base, y.from);
  add_path_tables(base, joins);
  add_preds(base.where, path_preds(joins));
  if (head_query) add_preds(base.where, cond(*head_query, step));

  auto inner = std::make_shared<SqlQuery>(base);
  add_preds(inner->where, join_preds(x));
  add_preds(inner->where, cond(y, step));

  SqlQuery q = base;
  add_preds(q.where, join_preds(y));
  add_preds(q.where, cond(x, step));
  q.where.push_back(Predicate{InPredicate{head, inner, false}});
  return q;
}

SqlQuery map_sort(const QdmrStep& step, const std::vector<JoinPath>& joins,
                  const std::vector<MappedStep>& mapped) {
  require_refs(step, 2);
  const SqlQuery& x = ref_query(mapped, step, 0);
  const SqlQuery& y = ref_query(mapped, step, 1);
  Measure m = measure_of(y, step);
  SqlQuery q;
  q.select = x.select;
  add_tables(q, x.from);
  add_tables(q, y.from);
  add_path_tables(q, joins);
  add_preds(q.where, path_preds(joins));
  add_preds(q.where, cond(x, step));
  add_preds(q.where, join_preds(y));
  if (m.expr.fn) set_group(q, m.group_by, step);
  q.order_by = OrderBy{m.expr, step.op.direction.value_or(SortDirection::Asc)};
  return q;
}

SqlQuery map_discard(const QdmrStep& step, const std::vector<MappedStep>& mapped) {
  require_refs(step, 2);
  const SqlQuery& x = ref_query(mapped, step, 0);
  const SqlQuery& y = ref_query(mapped, step, 1);
  if (y.arithmetic || y.select.size() != 1) {
    throw Error(ErrorKind::ArityMismatch,
                "step " + std::to_string(step.index) + ": discarded step must select one column");
  }
  SqlQuery q = carry(x, step);
  auto sub = std::make_shared<SqlQuery>(y);
  q.where.push_back(Predicate{InPredicate{plain_column(q, step, "discard operand"), sub, true}});
  return q;
}

bool is_scalar(const SqlQuery& q) {
  if (q.arithmetic) return true;
  return q.select.size() == 1 && q.select[0].fn && !q.group_by && !q.limit;
}

SqlQuery map_arithmetic(const QdmrStep& step, const std::vector<MappedStep>& mapped) {
  require_refs(step, 2);
  const SqlQuery& x = ref_query(mapped, step, 0);
  const SqlQuery& y = ref_query(mapped, step, 1);
  if (!is_scalar(x) || !is_scalar(y)) {
    throw Error(ErrorKind::ArityMismatch,
                "step " + std::to_string(step.index) + ": arithmetic needs scalar operands");
  }
  SqlQuery q;
  q.arithmetic = ArithmeticExpr{*step.op.arith_op, std::make_shared<SqlQuery>(x),
                                std::make_shared<SqlQuery>(y)};
  return q;
}

void collect(const Predicate& p, std::vector<ColumnRef>& out) {
  auto add = [&](const ColumnRef& c) {
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  };
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, JoinPredicate>) {
          add(n.source);
          add(n.target);
        } else if constexpr (std::is_same_v<T, OrPredicate>) {
          for (const auto& b : n.branches) {
            for (const Predicate& q : b) collect(q, out);
          }
        } else {
          add(n.lhs.column);
        }
      },
      p.node);
}

}  // namespace

std::string render_literal(const Literal& literal) {
  if (literal.numeric) return literal.text;
  std::string out = "'";
  for (char c : literal.text) {
    out += c;
    if (c == '\'') out += '\'';
  }
  return out + "'";
}

std::string render_predicate(const Predicate& predicate) {
  return std::visit(
      [](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, JoinPredicate>) {
          return n.source.sql() + " = " + n.target.sql();
        } else if constexpr (std::is_same_v<T, ComparePredicate>) {
          return render_expr(n.lhs, false) + " " + std::string(to_string(n.cmp)) + " " +
                 render_literal(n.value);
        } else if constexpr (std::is_same_v<T, InPredicate>) {
          return render_expr(n.lhs, false) + (n.negated ? " NOT IN (" : " IN (") +
                 render_sql(*n.subquery) + ")";
        } else {
          std::vector<std::string> parts;
          for (const auto& branch : n.branches) {
            std::string c = render_conjunction(branch);
            parts.push_back(branch.size() > 1 ? "(" + c + ")" : c);
          }
          return "(" + strings::join(parts, " OR ") + ")";
        }
      },
      predicate.node);
}

std::string clause(const SqlQuery& query, Clause which) {
  switch (which) {
    case Clause::Select: {
      if (query.arithmetic) {
        return "(" + render_sql(*query.arithmetic->lhs) + ") " + op_symbol(query.arithmetic->op) +
               " (" + render_sql(*query.arithmetic->rhs) + ")";
      }
      bool inner = query.distinct && has_aggregate(query);
      std::vector<std::string> items;
      for (const Expr& e : query.select) items.push_back(render_expr(e, inner));
      return std::string(query.distinct && !inner ? "DISTINCT " : "") + strings::join(items, ", ");
    }
    case Clause::From: {
      std::vector<std::string> names;
      for (const std::string& t : query.from) names.push_back(sql_identifier(t));
      return strings::join(names, ", ");
    }
    case Clause::Where:
      return render_conjunction(query.where);
  }
  return {};
}

std::string render_sql(const SqlQuery& query) {
  std::string out = "SELECT " + clause(query, Clause::Select);
  if (query.arithmetic) return out;
  if (!query.from.empty()) out += " FROM " + clause(query, Clause::From);
  if (!query.where.empty()) out += " WHERE " + clause(query, Clause::Where);
  if (query.group_by) out += " GROUP BY " + query.group_by->sql();
  if (!query.having.empty()) out += " HAVING " + render_conjunction(query.having);
  if (query.order_by) {
    out += " ORDER BY " + render_expr(query.order_by->expr, false) +
           (query.order_by->direction == SortDirection::Desc ? " DESC" : " ASC");
  }
  if (query.limit) out += " LIMIT " + std::to_string(*query.limit);
  return out;
}

std::vector<ColumnRef> query_columns(const SqlQuery& query) {
  std::vector<ColumnRef> out;
  auto add = [&](const ColumnRef& c) {
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  };
  for (const Expr& e : query.select) add(e.column);
  if (query.group_by) add(*query.group_by);
  if (query.order_by) add(query.order_by->expr.column);
  for (const Predicate& p : query.where) collect(p, out);
  for (const Predicate& p : query.having) collect(p, out);
  return out;
}

bool conflicts_with(const SqlQuery& query, const ColumnRef& column, std::string_view value) {
  for (const Predicate& p : query.where) {
    const auto* c = std::get_if<ComparePredicate>(&p.node);
    if (c && !c->lhs.fn && c->lhs.column == column && c->cmp == Comparator::Eq &&
        c->value.text != value) {
      return true;
    }
  }
  return false;
}

SqlQuery resolve_self_join(const QdmrStep& step, const StepLink& link,
                           const std::vector<JoinPath>& joins,
                           const std::vector<MappedStep>& mapped) {
  require_refs(step, 1);
  const ColumnRef& col = linked_column(link, step);
  if (!link.value) {
    throw Error(ErrorKind::MappingFailed,
                "step " + std::to_string(step.index) + ": self-join needs a literal");
  }
  const SqlQuery& x = ref_query(mapped, step, 0);
  SqlQuery q;
  q.select = {plain_column(x, step, "filtered reference")};
  q.from = x.from;
  add_table(q, col.table);
  add_path_tables(q, joins);
  add_preds(q.where, join_preds(x));
  add_preds(q.where, path_preds(joins));
  add_preds(q.where, {equals_value(col, *link.value)});
  auto sub = std::make_shared<SqlQuery>(x);
  q.where.push_back(Predicate{InPredicate{q.select.front(), sub, false}});
  return q;
}

SqlQuery map_step(const QdmrStep& step, const StepLink& link, const std::vector<JoinPath>& joins,
                  const std::vector<MappedStep>& mapped) {
  for (int r : step.ref_args) {
    if (r < 1 || r >= step.index || static_cast<std::size_t>(r) > mapped.size()) {
      throw Error(ErrorKind::UnmappedReference, "step " + std::to_string(step.index) +
                                                    " references unmapped step #" +
                                                    std::to_string(r));
    }
  }
  switch (step.op.kind) {
    case OperatorKind::Select: return map_select(step, link);
    case OperatorKind::Filter: return map_filter(step, link, joins, mapped);
    case OperatorKind::Project: return map_project(step, link, joins, mapped);
    case OperatorKind::Aggregate: return map_aggregate(step, mapped);
    case OperatorKind::Group: return map_group(step, joins, mapped);
    case OperatorKind::Superlative: return map_superlative(step, joins, mapped);
    case OperatorKind::Comparative: return map_comparative(step, link, joins, mapped);
    case OperatorKind::Union: return map_union(step, joins, mapped);
    case OperatorKind::UnionColumn: return map_union_column(step, joins, mapped);
    case OperatorKind::Intersect: return map_intersect(step, link, joins, mapped);
    case OperatorKind::Sort: return map_sort(step, joins, mapped);
    case OperatorKind::Discard: return map_discard(step, mapped);
    case OperatorKind::Arithmetic: return map_arithmetic(step, mapped);
  }
  throw Error(ErrorKind::Internal, "unhandled operator");
}

}  // namespace sqlsynth
