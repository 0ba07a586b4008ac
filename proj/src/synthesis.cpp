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

#include "sqlsynth/synthesis.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "sqlsynth/error.hpp"
#include "sqlsynth/join_planner.hpp"
#include "sqlsynth/lexical.hpp"
#include "strings.hpp"

namespace sqlsynth {

namespace {

using Clock = std::chrono::steady_clock;

bool joins_references(OperatorKind k) {
  switch (k) {
    case OperatorKind::Project:
    case OperatorKind::Filter:
    case OperatorKind::Group:
    case OperatorKind::Superlative:
    case OperatorKind::Comparative:
    case OperatorKind::Union:
    case OperatorKind::UnionColumn:
    case OperatorKind::Intersect:
    case OperatorKind::Sort:
      return true;
    default:
      return false;
  }
}

std::string ref(int i) { return "#" + std::to_string(i); }

std::vector<std::string> step_texts(const QdmrProgram& program) {
  std::vector<std::string> out;
  for (const QdmrStep& s : program.steps) out.push_back(s.raw_text);
  return out;
}

}  // namespace

std::string_view to_string(Heuristic h) noexcept {
  switch (h) {
    case Heuristic::Distinct: return "distinct";
    case Heuristic::Superlative: return "superlative";
    case Heuristic::AggregateSwap: return "aggregate_swap";
  }
  return "?";
}

std::string_view to_string(SynthesisStatus s) noexcept {
  switch (s) {
    case SynthesisStatus::Found: return "Found";
    case SynthesisStatus::Exhausted: return "Exhausted";
    case SynthesisStatus::Timeout: return "Timeout";
    case SynthesisStatus::MappingFailed: return "MappingFailed";
  }
  return "?";
}

bool SynthesisConfig::enabled(Heuristic h) const {
  return std::find(heuristics.begin(), heuristics.end(), h) != heuristics.end();
}

std::vector<MappedStep> synthesize_steps(const QdmrProgram& program, const SchemaGraph& schema,
                                         const Assignment& assignment) {
  std::vector<MappedStep> mapped;
  for (const QdmrStep& step : program.steps) {
    try {
      StepLink link;
      if (const SlotChoice* c = assignment.for_step(step.index)) {
        const ColumnRef* col = schema.find_column(c->column.table, c->column.column);
        if (!col) throw Error(ErrorKind::UnknownColumn, "unknown column " + c->column.qualified());
        link.column = *col;
        link.value = c->value;
      } else if (!step.phrase().empty()) {
        throw Error(ErrorKind::MappingFailed, "phrase '" + step.phrase() + "' is not assigned");
      }

      std::vector<JoinPath> joins;
      if (joins_references(step.op.kind) && !step.ref_args.empty()) {
        if (link.column) {
          for (int r : step.ref_args) {
            joins.push_back(shortest_join_path(schema, {*link.column}, mapped.at(r - 1).cols));
          }
        } else {
          const auto& head = mapped.at(step.ref_args[0] - 1).cols;
          for (std::size_t i = 1; i < step.ref_args.size(); ++i) {
            joins.push_back(shortest_join_path(schema, head, mapped.at(step.ref_args[i] - 1).cols));
          }
        }
      }

      SqlQuery q = map_step(step, link, joins, mapped);
      std::vector<ColumnRef> cols;
      if (link.column) cols.push_back(*link.column);
      for (ColumnRef& c : query_columns(q)) {
        if (std::find(cols.begin(), cols.end(), c) == cols.end()) cols.push_back(std::move(c));
      }
      mapped.push_back(MappedStep{step, std::move(cols), std::move(q)});
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::MappingFailed && std::string(e.what()).rfind("step ", 0) == 0) {
        throw;
      }
      ErrorKind kind = e.kind() == ErrorKind::DisconnectedTables ? ErrorKind::MissingJoin : e.kind();
      throw Error(ErrorKind::MappingFailed, "step " + std::to_string(step.index) + ": " +
                                                std::string(to_string(kind)) + ": " + e.what());
    }
  }
  return mapped;
}

SqlQuery synthesize(const QdmrProgram& program, const SchemaGraph& schema,
                    const Assignment& assignment) {
  if (program.steps.empty()) throw Error(ErrorKind::EmptyProgram, "empty program");
  return synthesize_steps(program, schema, assignment).back().query;
}

std::optional<SqlQuery> heuristic_distinct(const SqlQuery& query) {
  if (query.distinct || query.arithmetic) return std::nullopt;
  SqlQuery q = query;
  q.distinct = true;
  return q;
}

QdmrProgram heuristic_superlative(const QdmrProgram& program) {
  std::vector<std::string> texts = step_texts(program);
  bool rewrote = false;
  for (const QdmrStep& step : program.steps) {
    if (step.op.kind != OperatorKind::Project && step.op.kind != OperatorKind::Filter) continue;
    std::optional<AggregateFn> dir;
    for (const std::string& w : split_words(step.raw_text)) {
      if ((dir = superlative_direction(w))) break;
    }
    if (!dir) continue;
    const char* word = *dir == AggregateFn::Max ? "highest" : "lowest";
    int target = 0, measure = 0;
    if (step.op.kind == OperatorKind::Project && step.ref_args.size() == 1) {
      measure = step.ref_args[0];
      const QdmrStep& m = program.step(measure);
      if (m.ref_args.empty()) continue;
      target = m.ref_args[0];
    } else if (step.op.kind == OperatorKind::Filter && step.ref_args.size() >= 2) {
      target = step.ref_args[0];
      measure = step.ref_args[1];
    } else {
      continue;
    }
    texts[step.index - 1] = ref(target) + " where " + ref(measure) + " is " + word;
    rewrote = true;
  }
  if (!rewrote) {
    throw Error(ErrorKind::NoSuperlativeToken, "no PROJECT or FILTER step carries a superlative");
  }
  return parse_qdmr(strings::join(texts, "; "));
}

std::vector<QdmrProgram> heuristic_aggregate_swap(const QdmrProgram& program) {
  std::vector<QdmrProgram> out;
  for (const QdmrStep& step : program.steps) {
    if (step.op.kind != OperatorKind::Aggregate && step.op.kind != OperatorKind::Group) continue;
    auto fn = step.op.aggregate_fn;
    if (fn != AggregateFn::Count && fn != AggregateFn::Sum) continue;
    std::string head = fn == AggregateFn::Count ? "sum" : "number";
    std::string text = head + " of " + ref(step.ref_args.at(0));
    if (step.op.kind == OperatorKind::Group) text += " for each " + ref(step.ref_args.at(1));
    std::vector<std::string> texts = step_texts(program);
    texts[step.index - 1] = text;
    out.push_back(parse_qdmr(strings::join(texts, "; ")));
  }
  if (out.empty()) {
    throw Error(ErrorKind::NoSwappableAggregate, "no count or sum aggregate to swap");
  }
  return out;
}

std::string render_linked_program(const QdmrProgram& program, const Assignment& assignment) {
  std::vector<std::string> parts;
  for (const QdmrStep& s : program.steps) {
    const SlotChoice* c = assignment.for_step(s.index);
    std::string col = c ? c->column.qualified() : std::string("?");
    std::string lit = c && c->value ? col + " = " + render_literal(Literal{*c->value, false}) : col;
    std::vector<std::string> args;
    auto refs = [&](std::size_t from) {
      for (std::size_t i = from; i < s.ref_args.size(); ++i) args.push_back(ref(s.ref_args[i]));
    };
    const QdmrOperator& op = s.op;
    switch (op.kind) {
      case OperatorKind::Select:
        args.push_back(lit);
        break;
      case OperatorKind::Filter:
        refs(0);
        args.push_back(lit);
        break;
      case OperatorKind::Project:
        args.push_back(col);
        refs(0);
        break;
      case OperatorKind::Aggregate:
      case OperatorKind::Group:
        args.push_back(std::string(to_string(*op.aggregate_fn)));
        refs(0);
        break;
      case OperatorKind::Superlative:
        args.push_back(std::string(to_string(*op.superlative_fn)));
        args.push_back(std::to_string(op.superlative_k));
        refs(0);
        break;
      case OperatorKind::Comparative:
        refs(0);
        if (c) args.push_back(col);
        args.push_back(std::string(to_string(*op.comparator)));
        if (s.value) args.push_back(render_literal(*s.value));
        break;
      case OperatorKind::Intersect:
        if (c) args.push_back(col);
        refs(0);
        break;
      case OperatorKind::Sort:
        refs(0);
        args.push_back(std::string(to_string(*op.direction)));
        break;
      case OperatorKind::Arithmetic:
        args.push_back(std::string(to_string(*op.arith_op)));
        refs(0);
        break;
      default:
        refs(0);
        break;
    }
    parts.push_back(std::string(to_string(op.kind)) + "(" + strings::join(args, ", ") + ")");
  }
  return strings::join(parts, "; ");
}

SynthesisOutcome search(const QdmrProgram& program, const Denotation& answer,
                        const SearchContext& ctx, const SynthesisConfig& config) {
  const auto deadline = Clock::now() + config.timeout;
  SynthesisOutcome out;

  struct Variant {
    QdmrProgram program;
    std::vector<Heuristic> applied;
  };
  std::vector<Variant> variants;
  if (config.enabled(Heuristic::Superlative)) {
    try {
      variants.push_back({heuristic_superlative(program), {Heuristic::Superlative}});
    } catch (const Error&) {
    }
  }
  if (config.enabled(Heuristic::AggregateSwap)) {
    try {
      for (QdmrProgram& p : heuristic_aggregate_swap(program)) {
        variants.push_back({std::move(p), {Heuristic::AggregateSwap}});
      }
    } catch (const Error&) {
    }
  }

  std::vector<PhraseSlot> slots =
      build_slots(program, ctx.schema, ctx.lexicon, &ctx.values, ctx.lemmatizer);
  AssignmentEnumerator assignments(std::move(slots), config.top_k, config.max_assignments);

  std::set<std::string> seen;
  std::optional<std::string> first_mapping_error;
  bool timed_out = false;

  // Returns true when the candidate matches.
  auto attempt = [&](const SqlQuery& q, const QdmrProgram& from, const Assignment& a,
                     std::vector<Heuristic> applied) {
    std::string sql = render_sql(q);
    if (!seen.insert(sql).second) return false;
    auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now());
    if (remaining.count() <= 0) {
      timed_out = true;
      return false;
    }
    ++out.candidates_tried;
    try {
      Denotation d = execute(ctx.database, sql, remaining);
      if (!denotations_equal(d, answer, config.allow_empty_denotation)) return false;
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::ExecutionTimeout && Clock::now() >= deadline) timed_out = true;
      return false;
    }
    out.status = SynthesisStatus::Found;
    out.query = q;
    out.sql = std::move(sql);
    out.assignment = a;
    out.program = from;
    out.heuristics_applied = std::move(applied);
    return true;
  };

  // Base or variant query plus its DISTINCT form.
  auto with_distinct = [&](const QdmrProgram& p, const Assignment& a,
                           const std::vector<Heuristic>& applied) {
    std::optional<SqlQuery> q;
    try {
      q = synthesize(p, ctx.schema, a);
    } catch (const Error& e) {
      if (!first_mapping_error) first_mapping_error = e.what();
      return false;
    }
    if (attempt(*q, p, a, applied) || timed_out) return true;
    if (config.enabled(Heuristic::Distinct)) {
      if (auto d = heuristic_distinct(*q)) {
        std::vector<Heuristic> more = applied;
        more.push_back(Heuristic::Distinct);
        if (attempt(*d, p, a, std::move(more)) || timed_out) return true;
      }
    }
    return false;
  };

  while (auto a = assignments.next()) {
    if (Clock::now() >= deadline) {
      timed_out = true;
      break;
    }
    ++out.assignments_tried;
    if (with_distinct(program, *a, {})) break;
    bool done = false;
    for (const Variant& v : variants) {
      if ((done = with_distinct(v.program, *a, v.applied))) break;
    }
    if (done) break;
  }

  if (out.status == SynthesisStatus::Found) return out;
  if (timed_out) {
    out.status = SynthesisStatus::Timeout;
    out.failure_reason = "time budget exhausted";
  } else if (out.candidates_tried == 0 && first_mapping_error) {
    out.status = SynthesisStatus::MappingFailed;
    out.failure_reason = first_mapping_error;
  } else {
    out.status = SynthesisStatus::Exhausted;
    out.failure_reason = "no candidate among " + std::to_string(out.assignments_tried) +
                         " assignments matched the answer";
  }
  return out;
}

}  // namespace sqlsynth
