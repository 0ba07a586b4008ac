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

#include "sqlsynth/sqlsynth.h"

#include <cstdlib>
#include <cstring>
#include <optional>
#include <sstream>
#include <string>

#include "json.hpp"
#include "sqlsynth/error.hpp"
#include "sqlsynth/executor.hpp"
#include "sqlsynth/linker.hpp"
#include "sqlsynth/pipeline.hpp"
#include "sqlsynth/qdmr.hpp"
#include "sqlsynth/schema.hpp"
#include "sqlsynth/sql.hpp"
#include "sqlsynth/synthesis.hpp"

struct sqs_engine {
  sqlsynth::EmbeddingLexicon lexicon;
  sqlsynth::Lemmatizer lemmatizer;
};

namespace {

using json = nlohmann::ordered_json;
using sqlsynth::Error;
using sqlsynth::ErrorKind;

thread_local std::string g_last_error;

sqs_status status_of(ErrorKind kind) {
  return kind == ErrorKind::Internal ? SQS_ERR_INTERNAL : SQS_ERR_INVALID_INPUT;
}

template <typename F>
sqs_status guarded(F&& body) {
  g_last_error.clear();
  try {
    return body();
  } catch (const Error& e) {
    g_last_error = std::string(to_string(e.kind())) + ": " + e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return SQS_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = std::string("internal error: ") + e.what();
    return SQS_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "internal error";
    return SQS_ERR_INTERNAL;
  }
}

sqs_status usage(const char* what) {
  g_last_error = what;
  return SQS_ERR_USAGE;
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

sqlsynth::SynthesisConfig to_config(const sqs_config* c) {
  sqlsynth::SynthesisConfig cfg;
  cfg.top_k = c->top_k;
  cfg.max_assignments = c->max_assignments;
  cfg.timeout = std::chrono::milliseconds(static_cast<long long>(c->timeout_secs * 1000.0));
  cfg.allow_empty_denotation = c->allow_empty != 0;
  return cfg;
}

const char* check_config(const sqs_config* c) {
  if (c->top_k == 0) return "top-k must be at least 1";
  if (c->max_assignments == 0) return "max-assignments must be at least 1";
  if (!(c->timeout_secs > 0)) return "timeout must be positive";
  if (c->jobs == 0) return "jobs must be at least 1";
  return nullptr;
}

json cell_json(const sqlsynth::Cell& c) {
  if (c.is_null()) return nullptr;
  if (c.is_number()) return c.as_number();
  return c.as_text();
}

// Applies a user assignment on top of the top-ranked choices.
sqlsynth::Assignment apply_assignment(const std::vector<sqlsynth::PhraseSlot>& slots,
                                      const sqlsynth::SchemaGraph& schema, const char* text) {
  sqlsynth::Assignment a;
  for (const sqlsynth::PhraseSlot& s : slots) {
    sqlsynth::SlotChoice c;
    c.step_index = s.step_index;
    c.phrase = s.phrase;
    c.column = s.candidates.front().column;
    if (s.kind == sqlsynth::SlotKind::Literal) c.value = s.stored_values.front();
    a.choices.push_back(std::move(c));
    a.score_rank.push_back(0);
  }
  if (!text) return a;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidInput, std::string("assignment is not JSON: ") + e.what());
  }
  auto set = [&](int step, const std::string& column, std::optional<std::string> value) {
    const sqlsynth::ColumnRef& col = schema.column(column);
    for (sqlsynth::SlotChoice& c : a.choices) {
      if (c.step_index == step) {
        c.column = col;
        c.value = std::move(value);
        return;
      }
    }
    sqlsynth::SlotChoice c;
    c.step_index = step;
    c.column = col;
    c.value = std::move(value);
    a.choices.push_back(std::move(c));
  };
  auto entry = [&](int step, const json& v) {
    if (v.is_string()) {
      set(step, v.get<std::string>(), std::nullopt);
    } else if (v.is_object() && v.contains("column")) {
      std::optional<std::string> value;
      if (v.contains("value")) value = v["value"].is_string() ? v["value"].get<std::string>() : v["value"].dump();
      set(step, v["column"].get<std::string>(), value);
    } else {
      throw Error(ErrorKind::InvalidInput, "assignment entries are \"t.c\" or {\"column\":...}");
    }
  };
  if (doc.is_object()) {
    for (const auto& [k, v] : doc.items()) {
      int step = 0;
      try {
        step = std::stoi(k);
      } catch (const std::exception&) {
        throw Error(ErrorKind::InvalidInput, "assignment keys are step numbers, got '" + k + "'");
      }
      entry(step, v);
    }
  } else if (doc.is_array()) {
    for (const json& v : doc) {
      if (!v.is_object() || !v.contains("step")) {
        throw Error(ErrorKind::InvalidInput, "assignment list entries need a \"step\"");
      }
      entry(v["step"].get<int>(), v);
    }
  } else {
    throw Error(ErrorKind::InvalidInput, "assignment must be a JSON object or array");
  }
  return a;
}

}  // namespace

extern "C" {

const char* sqs_version(void) { return "0.1.0"; }

void sqs_config_default(sqs_config* config) {
  if (!config) return;
  config->top_k = 20;
  config->max_assignments = 1000;
  config->timeout_secs = 60.0;
  config->allow_empty = 0;
  config->jobs = 1;
}

sqs_status sqs_engine_create(const char* embeddings_path, const char* lemma_path,
                             sqs_engine** out) {
  if (!out) return usage("sqs_engine_create: out is NULL");
  *out = nullptr;
  return guarded([&] {
    auto e = std::make_unique<sqs_engine>();
    if (embeddings_path) e->lexicon = sqlsynth::EmbeddingLexicon::load(embeddings_path);
    if (lemma_path) e->lemmatizer = sqlsynth::Lemmatizer::from_file(lemma_path);
    *out = e.release();
    return SQS_OK;
  });
}

void sqs_engine_destroy(sqs_engine* engine) { delete engine; }

sqs_status sqs_synth(sqs_engine* engine, const char* examples_path, const char* db_dir,
                     const sqs_config* config, const char* out_pairs, const char* out_report,
                     char** summary_out) {
  if (!engine || !examples_path || !db_dir || !out_report) {
    return usage("sqs_synth: engine, examples, db_dir and out_report are required");
  }
  sqs_config defaults;
  sqs_config_default(&defaults);
  if (!config) config = &defaults;
  if (const char* bad = check_config(config)) return usage(bad);
  if (summary_out) *summary_out = nullptr;
  return guarded([&] {
    sqlsynth::ExampleSet set = sqlsynth::load_examples(examples_path);
    sqlsynth::CorpusOptions options;
    options.config = to_config(config);
    options.jobs = config->jobs;
    auto outcomes = sqlsynth::run_corpus(set, db_dir, engine->lexicon, options, engine->lemmatizer);
    if (out_pairs) sqlsynth::emit_training_pairs(set, outcomes, out_pairs);
    sqlsynth::CoverageReport report = sqlsynth::build_report(set, outcomes);
    sqlsynth::write_text_file(out_report, sqlsynth::report_json(report));
    if (summary_out) *summary_out = dup(sqlsynth::report_text(report.all));
    return SQS_OK;
  });
}

sqs_status sqs_map(sqs_engine* engine, const char* qdmr, const char* schema_path,
                   const char* assignment_json, char** sql_out) {
  if (!engine || !qdmr || !schema_path || !sql_out) {
    return usage("sqs_map: engine, qdmr, schema_path and sql_out are required");
  }
  *sql_out = nullptr;
  return guarded([&] {
    sqlsynth::QdmrProgram program = sqlsynth::parse_qdmr(qdmr);
    std::filesystem::path path(schema_path);
    bool is_json = path.extension() == ".json";
    std::optional<sqlsynth::Database> db;
    sqlsynth::SchemaGraph schema;
    if (is_json) {
      schema = sqlsynth::load_schema(path);
    } else {
      db = sqlsynth::Database::open_read_only(path);
      schema = sqlsynth::load_schema(*db);
    }
    std::optional<sqlsynth::ValueIndex> values;
    if (db) values.emplace(*db, schema);
    auto slots = sqlsynth::build_slots(program, schema, engine->lexicon, values ? &*values : nullptr,
                                       engine->lemmatizer);
    sqlsynth::Assignment a = apply_assignment(slots, schema, assignment_json);
    *sql_out = dup(sqlsynth::render_sql(sqlsynth::synthesize(program, schema, a)));
    return SQS_OK;
  });
}

sqs_status sqs_link(sqs_engine* engine, const char* phrase, const char* schema_path, size_t top_k,
                    char** ranking_out) {
  if (!engine || !phrase || !schema_path || !ranking_out) {
    return usage("sqs_link: engine, phrase, schema_path and ranking_out are required");
  }
  *ranking_out = nullptr;
  return guarded([&] {
    sqlsynth::SchemaGraph schema = sqlsynth::load_schema(std::filesystem::path(schema_path));
    auto linking = sqlsynth::rank_columns(engine->lexicon, schema, phrase, 0, engine->lemmatizer);
    std::ostringstream out;
    std::size_t n = top_k == 0 ? linking.ranked.size() : std::min(top_k, linking.ranked.size());
    for (std::size_t i = 0; i < n; ++i) {
      const auto& c = linking.ranked[i];
      char sim[32];
      std::snprintf(sim, sizeof sim, "%.4f", c.similarity);
      out << (i + 1) << '\t' << c.tier << '\t' << sim << '\t' << c.column.qualified() << '\n';
    }
    *ranking_out = dup(out.str());
    return SQS_OK;
  });
}

sqs_status sqs_parse_qdmr(const char* qdmr, char** json_out) {
  if (!qdmr || !json_out) return usage("sqs_parse_qdmr: qdmr and json_out are required");
  *json_out = nullptr;
  return guarded([&] {
    sqlsynth::QdmrProgram p = sqlsynth::parse_qdmr(qdmr);
    json steps = json::array();
    for (const sqlsynth::QdmrStep& s : p.steps) {
      json j;
      j["index"] = s.index;
      j["text"] = s.raw_text;
      j["operator"] = std::string(to_string(s.op.kind));
      if (s.op.aggregate_fn) j["aggregate"] = std::string(to_string(*s.op.aggregate_fn));
      if (s.op.superlative_fn) {
        j["superlative"] = std::string(to_string(*s.op.superlative_fn));
        j["k"] = s.op.superlative_k;
      }
      if (s.op.comparator) j["comparator"] = std::string(to_string(*s.op.comparator));
      if (s.op.direction) j["direction"] = std::string(to_string(*s.op.direction));
      if (s.op.arith_op) j["arithmetic"] = std::string(to_string(*s.op.arith_op));
      j["phrases"] = s.phrase_args;
      j["refs"] = s.ref_args;
      if (s.value) j["value"] = s.value->text;
      steps.push_back(std::move(j));
    }
    *json_out = dup(steps.dump());
    return SQS_OK;
  });
}

sqs_status sqs_execute(const char* db_path, const char* sql, double timeout_secs, char** json_out) {
  if (!db_path || !sql || !json_out) return usage("sqs_execute: db_path, sql and json_out are required");
  if (!(timeout_secs > 0)) return usage("sqs_execute: timeout must be positive");
  *json_out = nullptr;
  return guarded([&] {
    sqlsynth::Database db = sqlsynth::Database::open_read_only(db_path);
    sqlsynth::Denotation d = sqlsynth::execute(
        db, sql, std::chrono::milliseconds(static_cast<long long>(timeout_secs * 1000.0)));
    json rows = json::array();
    for (const sqlsynth::Row& r : d.rows) {
      json row = json::array();
      for (const sqlsynth::Cell& c : r) row.push_back(cell_json(c));
      rows.push_back(std::move(row));
    }
    *json_out = dup(rows.dump());
    return SQS_OK;
  });
}

sqs_status sqs_denotations_equal(const char* a_json, const char* b_json, int allow_empty,
                                 int* equal_out) {
  if (!a_json || !b_json || !equal_out) return usage("sqs_denotations_equal: null argument");
  return guarded([&] {
    auto a = sqlsynth::answer_from_json_text(a_json);
    auto b = sqlsynth::answer_from_json_text(b_json);
    *equal_out = sqlsynth::denotations_equal(a, b, allow_empty != 0) ? 1 : 0;
    return SQS_OK;
  });
}

const char* sqs_last_error(void) { return g_last_error.c_str(); }

void sqs_free(char* p) { std::free(p); }

}  // extern "C"
