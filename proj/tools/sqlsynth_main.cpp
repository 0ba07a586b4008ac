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

// Command-line front end. Talks to the engine only through the C API.

#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "sqlsynth/sqlsynth.h"

namespace {

struct Engine {
  sqs_engine* handle = nullptr;
  ~Engine() { sqs_engine_destroy(handle); }
};

int fail(sqs_status status) {
  std::fprintf(stderr, "sqlsynth: %s\n", sqs_last_error());
  return static_cast<int>(status);
}

// Prints and frees a string returned by the library.
void emit(char* text) {
  if (!text) return;
  std::fputs(text, stdout);
  std::size_t n = std::char_traits<char>::length(text);
  if (n == 0 || text[n - 1] != '\n') std::fputc('\n', stdout);
  sqs_free(text);
}

int open_engine(const std::string& embeddings, const std::string& lemmas, Engine& engine) {
  sqs_status s = sqs_engine_create(embeddings.empty() ? nullptr : embeddings.c_str(),
                                   lemmas.empty() ? nullptr : lemmas.c_str(), &engine.handle);
  return s == SQS_OK ? 0 : fail(s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compile QDMR decompositions to SQL and search for queries matching answers"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(sqs_version()));

  sqs_config cfg;
  sqs_config_default(&cfg);
  std::string examples, db_dir, embeddings, lemmas, out_pairs, out_report, out;
  std::string qdmr, schema, assignment, phrase;
  bool allow_empty = false;
  std::size_t link_top_k = 20;

  auto* synth = app.add_subcommand("synth", "search every example and write training pairs");
  synth->add_option("--examples", examples, "JSON Lines examples")->required();
  synth->add_option("--db-dir", db_dir, "directory of <db_id>.sqlite files")->required();
  synth->add_option("--embeddings", embeddings, "GloVe-format word vectors")->required();
  synth->add_option("--top-k", cfg.top_k, "candidate columns per phrase")->capture_default_str();
  synth->add_option("--max-assignments", cfg.max_assignments, "assignments per example")
      ->capture_default_str();
  synth->add_option("--timeout-secs", cfg.timeout_secs, "time budget per example")
      ->capture_default_str();
  synth->add_flag("--allow-empty", allow_empty, "let empty answers match empty results");
  synth->add_option("--jobs", cfg.jobs, "worker threads")->capture_default_str();
  synth->add_option("--lemmas", lemmas, "lemma override file (word lemma per line)");
  synth->add_option("--out-pairs", out_pairs, "pairs output (JSON Lines)")->required();
  synth->add_option("--out-report", out_report, "coverage report output (JSON)")->required();

  auto* coverage = app.add_subcommand("coverage", "search every example and write the report only");
  coverage->add_option("--examples", examples, "JSON Lines examples")->required();
  coverage->add_option("--db-dir", db_dir, "directory of <db_id>.sqlite files")->required();
  coverage->add_option("--embeddings", embeddings, "GloVe-format word vectors")->required();
  coverage->add_option("--lemmas", lemmas, "lemma override file");
  coverage->add_option("--out", out, "coverage report output (JSON)")->required();

  auto* map = app.add_subcommand("map", "print the SQL for a QDMR string");
  map->add_option("--qdmr", qdmr, "QDMR steps separated by ';'")->required();
  map->add_option("--schema", schema, "schema JSON document or database file")->required();
  map->add_option("--assignment", assignment, "JSON object of step -> column");
  map->add_option("--embeddings", embeddings, "GloVe-format word vectors");
  map->add_option("--lemmas", lemmas, "lemma override file");

  auto* link = app.add_subcommand("link", "print the ranked columns for a phrase");
  link->add_option("--phrase", phrase, "phrase to link")->required();
  link->add_option("--schema", schema, "schema JSON document or database file")->required();
  link->add_option("--embeddings", embeddings, "GloVe-format word vectors")->required();
  link->add_option("--top-k", link_top_k, "number of candidates, 0 for all")->capture_default_str();
  link->add_option("--lemmas", lemmas, "lemma override file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return SQS_ERR_USAGE;
  }

  Engine engine;
  if (int rc = open_engine(embeddings, lemmas, engine)) return rc;

  if (synth->parsed() || coverage->parsed()) {
    cfg.allow_empty = allow_empty ? 1 : 0;
    char* summary = nullptr;
    sqs_status s = synth->parsed()
                       ? sqs_synth(engine.handle, examples.c_str(), db_dir.c_str(), &cfg,
                                   out_pairs.c_str(), out_report.c_str(), &summary)
                       : sqs_synth(engine.handle, examples.c_str(), db_dir.c_str(), &cfg, nullptr,
                                   out.c_str(), &summary);
    if (s != SQS_OK) return fail(s);
    emit(summary);
    return 0;
  }
  if (map->parsed()) {
    char* sql = nullptr;
    sqs_status s = sqs_map(engine.handle, qdmr.c_str(), schema.c_str(),
                           assignment.empty() ? nullptr : assignment.c_str(), &sql);
    if (s != SQS_OK) return fail(s);
    emit(sql);
    return 0;
  }
  char* ranking = nullptr;
  sqs_status s = sqs_link(engine.handle, phrase.c_str(), schema.c_str(), link_top_k, &ranking);
  if (s != SQS_OK) return fail(s);
  emit(ranking);
  return 0;
}
