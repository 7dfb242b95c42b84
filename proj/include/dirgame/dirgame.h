// Copyright 2026 The dirgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* C interface to the dirgame engine. Every call returns a dg_status; on
 * failure dg_last_error() holds a message for the calling thread. Strings
 * returned through char** are owned by the caller and released with
 * dg_string_free. */
#ifndef DIRGAME_DIRGAME_H_
#define DIRGAME_DIRGAME_H_

#include <stddef.h>
#include <stdint.h>

#if defined(DIRGAME_BUILDING)
#define DG_API __attribute__((visibility("default")))
#else
#define DG_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dg_status {
  DG_OK = 0,
  DG_ERR_SPEC = 1,       /* bad config, usage or argument */
  DG_ERR_DOMAIN = 2,     /* argument outside the domain of an operation */
  DG_ERR_STRUCTURAL = 3, /* graph or strategy breaks the structural contract */
  DG_ERR_RESOURCE = 4,   /* a budget was exceeded */
  DG_ERR_INTERNAL = 5
} dg_status;

typedef struct dg_config dg_config;
typedef struct dg_experiment dg_experiment;

DG_API const char* dg_version(void);
DG_API const char* dg_last_error(void);
DG_API const char* dg_status_name(dg_status status);
DG_API void dg_string_free(char* s);

/* Parses and validates a JSON config document. */
DG_API dg_status dg_config_parse(const char* json_text, dg_config** out);
DG_API void dg_config_free(dg_config* config);
/* Number of worker threads the config asks for (0 = hardware). */
DG_API dg_status dg_config_threads(const dg_config* config, int* out);
/* Output directory from the config ("." by default). */
DG_API dg_status dg_config_output_dir(const dg_config* config, char** out);

/* Reach-set sizes, degree stats and validation report as JSON. *out_ok is
 * 0 when the region has structural violations. */
DG_API dg_status dg_inspect(const dg_config* config, char** out_json, int* out_ok);

/* Solves V_n for the first configured horizon. out_strategies_csv may be
 * NULL; it receives an empty string when no strategy table was built. */
DG_API dg_status dg_solve(const dg_config* config, char** out_json,
                          char** out_strategies_csv, double* out_value);

/* Runs the configured experiment. A run stopped by an error still returns
 * DG_OK with a handle; dg_experiment_status reports the stop reason. */
DG_API dg_status dg_experiment_run(const dg_config* config, dg_experiment** out);
DG_API void dg_experiment_free(dg_experiment* exp);
DG_API int dg_experiment_partial(const dg_experiment* exp);
DG_API dg_status dg_experiment_status(const dg_experiment* exp);
DG_API dg_status dg_experiment_samples_csv(const dg_experiment* exp, char** out);
DG_API dg_status dg_experiment_summary_csv(const dg_experiment* exp, char** out);
DG_API dg_status dg_experiment_report_json(const dg_experiment* exp, char** out);

/* Transience report for the configured graph and partition as JSON. */
DG_API dg_status dg_transience(const dg_config* config, char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* DIRGAME_DIRGAME_H_ */
