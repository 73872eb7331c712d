// Copyright 2026 The autoscale Authors
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

/* C interface of the autoscale engine. Every handle is opaque and owned by
 * the caller once returned; free it with the matching *_free function.
 * Functions return AS_OK or an error code; as_last_error() then describes
 * the failure for the calling thread. Strings returned through out
 * parameters stay valid until the owning handle is freed or, for
 * as_last_error, until the next failing call on the same thread. */

#ifndef AUTOSCALE_H
#define AUTOSCALE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define AS_API __declspec(dllexport)
#else
#define AS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum as_status {
  AS_OK = 0,
  AS_ERR_INVALID_ARGUMENT = 1,
  AS_ERR_CONFIG = 2,
  AS_ERR_CONTRACT = 3,
  AS_ERR_IO = 4,
  AS_ERR_NOT_FOUND = 5,
  AS_ERR_INTERNAL = 6
} as_status;

typedef struct as_scenario as_scenario;
typedef struct as_plan as_plan;
typedef struct as_result as_result;

typedef struct as_moaco_params {
  double alpha;
  double beta;
  double rho;
  double v;
  size_t max_iteration;
  size_t max_ant;
  size_t max_run;
} as_moaco_params;

typedef struct as_moga_params {
  size_t population_size;
  size_t generations;
  double crossover_rate;
  double mutation_rate; /* negative: 1 / number of genes */
  size_t tournament_size;
} as_moga_params;

typedef struct as_trace_params {
  size_t intervals;
  double peak;
  double base_fraction;
  double plateau_fraction;
  double tail_fraction;
  double noise;
  uint64_t seed;
} as_trace_params;

AS_API const char* as_version(void);
AS_API const char* as_status_name(as_status status);
AS_API const char* as_last_error(void);

/* Scenarios. */
AS_API as_status as_scenario_load(const char* path, as_scenario** out);
AS_API as_status as_scenario_parse(const char* json_text, as_scenario** out);
AS_API void as_scenario_free(as_scenario* scenario);
AS_API as_status as_scenario_name(const as_scenario* scenario, const char** name);
/* Re-checks the scenario; the report is kept inside the handle. */
AS_API as_status as_scenario_validate(as_scenario* scenario, size_t* violation_count);
AS_API as_status as_scenario_violation(const as_scenario* scenario, size_t index, const char** path,
                                       const char** message);
AS_API as_status as_scenario_counts(const as_scenario* scenario, size_t* objectives, size_t* primitives,
                                    size_t* regions);

/* Experiment plans. A plan copies the scenario. */
AS_API as_status as_plan_create(const as_scenario* scenario, as_plan** out);
AS_API void as_plan_free(as_plan* plan);
AS_API as_status as_plan_set_name(as_plan* plan, const char* name);
/* Comma-separated subset of moaco-cd, moga, rule, hill, random. */
AS_API as_status as_plan_set_approaches(as_plan* plan, const char* approaches);
AS_API as_status as_plan_set_intervals(as_plan* plan, size_t total, size_t warmup);
AS_API as_status as_plan_set_runs(as_plan* plan, size_t runs);
AS_API as_status as_plan_set_seed(as_plan* plan, uint64_t seed);
AS_API as_status as_plan_set_time_budget(as_plan* plan, double seconds);
AS_API as_status as_plan_set_trace(as_plan* plan, const char* csv_path);
AS_API as_status as_plan_set_output(as_plan* plan, const char* out_dir);
AS_API as_status as_plan_set_threads(as_plan* plan, size_t threads);
AS_API as_status as_plan_get_moaco(const as_plan* plan, as_moaco_params* out);
AS_API as_status as_plan_set_moaco(as_plan* plan, const as_moaco_params* params);
AS_API as_status as_plan_get_moga(const as_plan* plan, as_moga_params* out);
AS_API as_status as_plan_set_moga(as_plan* plan, const as_moga_params* params);

/* Runs every approach and repetition of the plan. */
AS_API as_status as_experiment_run(const as_plan* plan, as_result** out);
/* Recomputes the summary from results/<plan> written by an earlier run. */
AS_API as_status as_summarize_dir(const char* plan_dir, size_t warmup, as_result** out);
AS_API void as_result_free(as_result* result);
AS_API size_t as_result_row_count(const as_result* result);
AS_API as_status as_result_row(const as_result* result, size_t index, const char** approach, const char** metric,
                               const char** target, double* value);
AS_API as_status as_result_value(const as_result* result, const char* approach, const char* metric,
                                 const char* target, double* value);
AS_API as_status as_result_write_summary(const as_result* result, const char* path);

/* Traces. */
AS_API void as_trace_params_default(as_trace_params* out);
/* Writes a synthetic trace for the scenario's services. A NULL params uses
 * the scenario's own generator settings, or the defaults. */
AS_API as_status as_trace_generate(const as_scenario* scenario, const as_trace_params* params, const char* out_path);

/* Simulates `interval` intervals without acting, then lets `approach`
 * decide once for every triggered region. The decision is returned as a
 * JSON object {primitive: value}; "{}" when nothing triggered. Free the
 * string with as_string_free. */
AS_API as_status as_decide_once(const as_scenario* scenario, const char* approach, size_t interval, uint64_t seed,
                                double time_budget, char** decision_json);
AS_API void as_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* AUTOSCALE_H */
