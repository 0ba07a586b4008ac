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

#ifndef SQLSYNTH_SQLSYNTH_H_
#define SQLSYNTH_SQLSYNTH_H_

#include <stddef.h>

#if defined(_WIN32)
#if defined(SQLSYNTH_BUILDING)
#define SQS_API __declspec(dllexport)
#else
#define SQS_API __declspec(dllimport)
#endif
#else
#define SQS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes double as process exit codes for the command-line tool. */
typedef enum sqs_status {
  SQS_OK = 0,
  SQS_ERR_USAGE = 1,         /* bad arguments (null pointers, invalid options) */
  SQS_ERR_INVALID_INPUT = 2, /* unreadable or malformed input data */
  SQS_ERR_INTERNAL = 3
} sqs_status;

typedef struct sqs_engine sqs_engine;

typedef struct sqs_config {
  size_t top_k;           /* candidates per phrase, default 20 */
  size_t max_assignments; /* default 1000 */
  double timeout_secs;    /* per example, default 60 */
  int allow_empty;        /* nonzero: empty answers may match empty results */
  size_t jobs;            /* worker threads, default 1 */
} sqs_config;

SQS_API const char* sqs_version(void);

SQS_API void sqs_config_default(sqs_config* config);

/* Both paths may be NULL: no embeddings (all similarities 0) and the
   built-in lemma rules. */
SQS_API sqs_status sqs_engine_create(const char* embeddings_path, const char* lemma_path,
                                     sqs_engine** out);
SQS_API void sqs_engine_destroy(sqs_engine* engine);

/* Runs the search over a JSON Lines corpus. out_pairs may be NULL to write
   only the report. *summary_out receives a text coverage table. */
SQS_API sqs_status sqs_synth(sqs_engine* engine, const char* examples_path, const char* db_dir,
                             const sqs_config* config, const char* out_pairs,
                             const char* out_report, char** summary_out);

/* SQL for a QDMR string without execution. schema_path is a schema JSON
   document or a database file. assignment_json is optional, e.g.
   {"1": "ship.id", "3": {"column": "river.river_name", "value": "Mississippi"}};
   unassigned phrases take their top-ranked column. */
SQS_API sqs_status sqs_map(sqs_engine* engine, const char* qdmr, const char* schema_path,
                           const char* assignment_json, char** sql_out);

/* Tiered column ranking for a phrase, one "rank tier similarity column"
   line per candidate. top_k of 0 lists every column. */
SQS_API sqs_status sqs_link(sqs_engine* engine, const char* phrase, const char* schema_path,
                            size_t top_k, char** ranking_out);

/* Parsed program as JSON. */
SQS_API sqs_status sqs_parse_qdmr(const char* qdmr, char** json_out);

/* Rows of a read-only query as a JSON array of arrays. */
SQS_API sqs_status sqs_execute(const char* db_path, const char* sql, double timeout_secs,
                               char** json_out);

/* Compares two answers given as JSON (scalar, list or list of rows). */
SQS_API sqs_status sqs_denotations_equal(const char* a_json, const char* b_json, int allow_empty,
                                         int* equal_out);

/* Message of the last failed call on this thread, or "". */
SQS_API const char* sqs_last_error(void);

/* Releases strings returned through out-parameters. */
SQS_API void sqs_free(char* p);

#ifdef __cplusplus
}
#endif

#endif  // SQLSYNTH_SQLSYNTH_H_
