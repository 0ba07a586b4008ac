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

#include "sqlsynth/pipeline.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "sqlsynth/error.hpp"
#include "strings.hpp"

namespace sqlsynth {

namespace {

using json = nlohmann::ordered_json;

Cell cell_from_json(const json& v) {
  if (v.is_null()) return Cell::null();
  if (v.is_boolean()) return Cell::number(v.get<bool>() ? 1 : 0);
  if (v.is_number()) return Cell::number(v.get<double>());
  if (v.is_string()) return Cell::text(v.get<std::string>());
  throw Error(ErrorKind::InvalidInput, "answer cells must be scalars");
}

Denotation answer_from_json(const json& v) {
  Denotation d;
  if (!v.is_array()) {
    d.arity = 1;
    d.rows.push_back({cell_from_json(v)});
    return d;
  }
  bool nested = !v.empty() && std::all_of(v.begin(), v.end(), [](const json& r) { return r.is_array(); });
  bool flat = std::none_of(v.begin(), v.end(), [](const json& r) { return r.is_array(); });
  if (!nested && !flat) throw Error(ErrorKind::InvalidInput, "answer mixes rows and scalars");
  for (const json& r : v) {
    Row row;
    if (nested) {
      for (const json& c : r) row.push_back(cell_from_json(c));
    } else {
      row.push_back(cell_from_json(r));
    }
    if (d.rows.empty()) {
      d.arity = row.size();
    } else if (row.size() != d.arity) {
      throw Error(ErrorKind::InvalidInput, "answer rows differ in width");
    }
    d.rows.push_back(std::move(row));
  }
  if (v.empty()) d.arity = 0;
  return d;
}

std::string required_string(const json& obj, const char* key) {
  if (!obj.contains(key) || !obj[key].is_string()) {
    throw Error(ErrorKind::InvalidInput, std::string("missing string field \"") + key + "\"");
  }
  return obj[key].get<std::string>();
}

std::filesystem::path companion(const std::filesystem::path& path, std::string_view suffix) {
  return path.parent_path() / (path.stem().string() + std::string(suffix));
}

// Per-worker database state, opened on first use.
struct DbState {
  Database db;
  SchemaGraph schema;
  std::unique_ptr<ValueIndex> values;
};

}  // namespace

Denotation answer_from_json_text(std::string_view json_text) {
  try {
    return answer_from_json(json::parse(json_text));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidInput, std::string("answer: ") + e.what());
  }
}

ExampleSet parse_examples(std::string_view text, const std::string& default_dataset) {
  ExampleSet set;
  std::size_t line_no = 0;
  for (const std::string& raw : strings::split(text, '\n')) {
    ++line_no;
    if (strings::trim(raw).empty()) continue;
    RejectedLine reject;
    reject.line = line_no;
    reject.dataset = default_dataset;
    try {
      json obj;
      try {
        obj = json::parse(raw);
      } catch (const json::exception& e) {
        throw Error(ErrorKind::InvalidInput, std::string("not JSON: ") + e.what());
      }
      if (!obj.is_object()) throw Error(ErrorKind::InvalidInput, "line is not a JSON object");
      if (obj.contains("id") && obj["id"].is_string()) reject.id = obj["id"].get<std::string>();
      if (obj.contains("id") && obj["id"].is_number_integer()) {
        reject.id = std::to_string(obj["id"].get<long long>());
      }
      if (obj.contains("dataset") && obj["dataset"].is_string()) {
        reject.dataset = obj["dataset"].get<std::string>();
      }
      if (obj.contains("answer") && obj["answer"].is_array()) {
        reject.non_empty_answer = !obj["answer"].empty();
      } else if (obj.contains("answer")) {
        reject.non_empty_answer = true;
      }

      Example ex;
      ex.line = line_no;
      ex.id = reject.id;
      if (ex.id.empty()) throw Error(ErrorKind::InvalidInput, "missing field \"id\"");
      ex.question = obj.contains("question") && obj["question"].is_string()
                        ? obj["question"].get<std::string>()
                        : std::string();
      ex.qdmr = required_string(obj, "qdmr");
      ex.db_id = required_string(obj, "db_id");
      ex.dataset = reject.dataset;
      if (!obj.contains("answer")) throw Error(ErrorKind::InvalidInput, "missing field \"answer\"");
      ex.answer = answer_from_json(obj["answer"]);
      if (obj.contains("sql") && obj["sql"].is_string()) ex.gold_sql = obj["sql"].get<std::string>();
      ex.program = parse_qdmr(ex.qdmr);
      set.examples.push_back(std::move(ex));
    } catch (const Error& e) {
      reject.error = std::string(to_string(e.kind()));
      reject.reason = e.what();
      set.rejects.push_back(std::move(reject));
    }
  }
  return set;
}

ExampleSet load_examples(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::FileUnreadable, "cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  ExampleSet set = parse_examples(ss.str(), path.stem().string());
  if (set.examples.empty() && !set.rejects.empty()) {
    throw Error(ErrorKind::AllLinesInvalid,
                "all " + std::to_string(set.rejects.size()) + " lines of " + path.string() +
                    " are invalid; first: " + set.rejects.front().reason);
  }
  return set;
}

double coverage_percent(std::size_t synthesized, std::size_t examples) {
  if (examples == 0) return 0.0;
  // integer rounding of 1000*m/n avoids binary-fraction ties
  std::size_t tenths = (2000 * synthesized + examples) / (2 * examples);
  return static_cast<double>(tenths) / 10.0;
}

CoverageTable coverage_table(const std::vector<CoverageRow>& rows) {
  CoverageTable t;
  t.total.group = "Total";
  for (CoverageRow r : rows) {
    r.coverage = coverage_percent(r.synthesized, r.examples);
    t.total.db_count += r.db_count;
    t.total.examples += r.examples;
    t.total.synthesized += r.synthesized;
    t.rows.push_back(std::move(r));
  }
  t.total.coverage = coverage_percent(t.total.synthesized, t.total.examples);
  return t;
}

CoverageReport build_report(const ExampleSet& set, const std::vector<SynthesisOutcome>& outcomes) {
  struct Acc {
    std::set<std::string> dbs;
    std::size_t n = 0, m = 0;
    std::set<std::string> dbs_ne;
    std::size_t n_ne = 0, m_ne = 0;
  };
  std::map<std::string, Acc> groups;
  for (std::size_t i = 0; i < set.examples.size(); ++i) {
    const Example& ex = set.examples[i];
    Acc& a = groups[ex.dataset];
    bool found = i < outcomes.size() && outcomes[i].status == SynthesisStatus::Found;
    a.dbs.insert(ex.db_id);
    ++a.n;
    a.m += found ? 1 : 0;
    if (!ex.answer.empty()) {
      a.dbs_ne.insert(ex.db_id);
      ++a.n_ne;
      a.m_ne += found ? 1 : 0;
    }
  }
  for (const RejectedLine& r : set.rejects) {
    Acc& a = groups[r.dataset];
    ++a.n;
    if (r.non_empty_answer) ++a.n_ne;
  }
  std::vector<CoverageRow> all, ne;
  for (const auto& [name, a] : groups) {
    all.push_back(CoverageRow{name, a.dbs.size(), a.n, a.m, 0.0});
    ne.push_back(CoverageRow{name, a.dbs_ne.size(), a.n_ne, a.m_ne, 0.0});
  }
  return CoverageReport{coverage_table(all), coverage_table(ne)};
}

namespace {

json row_json(const CoverageRow& r) {
  json j;
  j["dataset"] = r.group;
  j["databases"] = r.db_count;
  j["examples"] = r.examples;
  j["synthesized"] = r.synthesized;
  j["coverage"] = r.coverage;
  return j;
}

json table_json(const CoverageTable& t) {
  json j;
  j["rows"] = json::array();
  for (const CoverageRow& r : t.rows) j["rows"].push_back(row_json(r));
  j["total"] = row_json(t.total);
  if (t.total.examples == 0) j["note"] = "no examples";
  return j;
}

}  // namespace

std::string report_json(const CoverageReport& report) {
  json j;
  j["all"] = table_json(report.all);
  j["non_empty"] = table_json(report.non_empty);
  return j.dump(2) + "\n";
}

std::string report_text(const CoverageTable& table) {
  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-16s %6s %10s %12s %10s\n", "Dataset", "DB #", "Examples",
                "Synthesized", "Coverage %");
  out += buf;
  auto line = [&](const CoverageRow& r) {
    std::snprintf(buf, sizeof buf, "%-16s %6zu %10zu %12zu %10.1f\n", r.group.c_str(), r.db_count,
                  r.examples, r.synthesized, r.coverage);
    out += buf;
  };
  for (const CoverageRow& r : table.rows) line(r);
  line(table.total);
  if (table.total.examples == 0) out += "(no examples)\n";
  return out;
}

std::vector<SynthesisOutcome> run_corpus(const ExampleSet& set, const std::filesystem::path& db_dir,
                                         const EmbeddingLexicon& lexicon,
                                         const CorpusOptions& options,
                                         const Lemmatizer& lemmatizer) {
  if (!std::filesystem::is_directory(db_dir)) {
    throw Error(ErrorKind::FileUnreadable, "database directory not found: " + db_dir.string());
  }
  std::vector<SynthesisOutcome> outcomes(set.examples.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    std::map<std::string, std::unique_ptr<DbState>> dbs;
    for (std::size_t i = next++; i < set.examples.size(); i = next++) {
      const Example& ex = set.examples[i];
      SynthesisOutcome& out = outcomes[i];
      try {
        auto it = dbs.find(ex.db_id);
        if (it == dbs.end()) {
          Database db = Database::open_read_only(db_dir / (ex.db_id + ".sqlite"));
          SchemaGraph schema = load_schema(db);
          auto state = std::make_unique<DbState>(DbState{std::move(db), std::move(schema), nullptr});
          state->values = std::make_unique<ValueIndex>(state->db, state->schema);
          it = dbs.emplace(ex.db_id, std::move(state)).first;
        }
        DbState& st = *it->second;
        SearchContext ctx{st.schema, st.db, *st.values, lexicon, lemmatizer};
        out = search(ex.program, ex.answer, ctx, options.config);
      } catch (const Error& e) {
        out = SynthesisOutcome{};
        out.status = SynthesisStatus::MappingFailed;
        out.failure_reason = std::string(to_string(e.kind())) + ": " + e.what();
      }
    }
  };

  std::size_t jobs = std::max<std::size_t>(1, std::min(options.jobs, set.examples.size()));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  return outcomes;
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::UnwritablePath, "cannot write " + path.string());
  out << content;
  if (!out) throw Error(ErrorKind::UnwritablePath, "write failed for " + path.string());
}

std::size_t emit_training_pairs(const ExampleSet& set, const std::vector<SynthesisOutcome>& outcomes,
                                const std::filesystem::path& path) {
  if (outcomes.size() != set.examples.size()) {
    throw Error(ErrorKind::Internal, "outcome count does not match example count");
  }
  std::string pairs, failures, rejects;
  std::size_t written = 0;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const Example& ex = set.examples[i];
    const SynthesisOutcome& o = outcomes[i];
    json j;
    j["id"] = ex.id;
    j["question"] = ex.question;
    if (o.status == SynthesisStatus::Found) {
      j["sql"] = o.sql;
      j["db_id"] = ex.db_id;
      json assignment = json::array();
      for (const SlotChoice& c : o.assignment->choices) {
        json a;
        a["step"] = c.step_index;
        a["phrase"] = c.phrase;
        a["column"] = c.column.qualified();
        if (c.value) a["value"] = *c.value;
        a["rank"] = c.rank + 1;
        assignment.push_back(std::move(a));
      }
      j["assignment"] = std::move(assignment);
      json heuristics = json::array();
      for (Heuristic h : o.heuristics_applied) heuristics.push_back(std::string(to_string(h)));
      j["heuristics"] = std::move(heuristics);
      j["linked_qdmr"] = render_linked_program(*o.program, *o.assignment);
      j["dataset"] = ex.dataset;
      if (ex.gold_sql) j["gold_sql"] = *ex.gold_sql;
      pairs += j.dump() + "\n";
      ++written;
    } else {
      j["db_id"] = ex.db_id;
      j["dataset"] = ex.dataset;
      j["status"] = std::string(to_string(o.status));
      j["failure_reason"] = o.failure_reason.value_or("");
      j["candidates_tried"] = o.candidates_tried;
      failures += j.dump() + "\n";
    }
  }
  for (const RejectedLine& r : set.rejects) {
    json j;
    j["line"] = r.line;
    j["id"] = r.id;
    j["dataset"] = r.dataset;
    j["error"] = r.error;
    j["reason"] = r.reason;
    rejects += j.dump() + "\n";
  }
  write_text_file(path, pairs);
  write_text_file(companion(path, ".failures.jsonl"), failures);
  write_text_file(companion(path, ".rejects.jsonl"), rejects);
  return written;
}

}  // namespace sqlsynth
