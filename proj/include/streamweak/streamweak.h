// Copyright 2026 The streamweak Authors
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

/* C interface to the streamweak library.
 *
 * Every fallible call returns an sw_status; on failure the message is
 * available from sw_last_error() on the same thread until the next call.
 * Objects are opaque handles released by their matching *_free function.
 * Element ids are uint32_t in [0, n).
 */
#ifndef STREAMWEAK_STREAMWEAK_H_
#define STREAMWEAK_STREAMWEAK_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SW_API __declspec(dllexport)
#else
#define SW_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sw_status {
  SW_OK = 0,
  SW_ERR_PARAMETER = 1,
  SW_ERR_PRECONDITION = 2,
  SW_ERR_STREAM = 3,
  SW_ERR_CAPACITY = 4,
  SW_ERR_ORACLE = 5,
  SW_ERR_CONNECTION = 6,
  SW_ERR_IO = 7,
  SW_ERR_INTERNAL = 8
} sw_status;

SW_API const char* sw_version(void);
SW_API const char* sw_status_name(sw_status status);
SW_API const char* sw_last_error(void);

/* ---- objectives ------------------------------------------------------ */

typedef struct sw_oracle sw_oracle;

SW_API sw_status sw_oracle_modular(const double* weights, size_t n,
                                   sw_oracle** out);
SW_API sw_status sw_oracle_coverage_file(const char* json_path,
                                         sw_oracle** out);
SW_API sw_status sw_oracle_coverage_json(const char* json_text,
                                         sw_oracle** out);
/* min{2 u(S) + 1, 2 v(S)} on 2k elements plus d dummies. */
SW_API sw_status sw_oracle_hard(size_t k, size_t d, sw_oracle** out);
/* CSV with header, feature columns, then "y". pairwise != 0 expands the
 * features to all pairwise products on demand. */
SW_API sw_status sw_oracle_r2_file(const char* csv_path, int pairwise,
                                   sw_oracle** out);
SW_API sw_status sw_oracle_logistic_file(const char* csv_path, int pairwise,
                                         sw_oracle** out);
/* Spawns argv[0..argc) and performs the JSON-lines handshake. */
SW_API sw_status sw_oracle_extern(const char* const* argv, size_t argc,
                                  int timeout_ms, sw_oracle** out);
SW_API void sw_oracle_free(sw_oracle* oracle);

SW_API size_t sw_oracle_size(const sw_oracle* oracle);
SW_API const char* sw_oracle_name(const sw_oracle* oracle);
SW_API int sw_oracle_concurrent_safe(const sw_oracle* oracle);
SW_API sw_status sw_oracle_evaluate(sw_oracle* oracle, const uint32_t* ids,
                                    size_t len, double* value);

/* ---- single runs ----------------------------------------------------- */

typedef struct sw_run_options {
  size_t cache_capacity; /* STREAK memo size; 0 disables */
  unsigned threads;      /* fan-out for concurrent-safe oracles */
} sw_run_options;

typedef struct sw_result sw_result;

/* algorithm: "streak" (uses epsilon), "tg" (uses tau), "random", "local",
 * "greedy" or "opt". The stream is ignored by greedy and opt. options may
 * be NULL. */
SW_API sw_status sw_run(sw_oracle* oracle, const char* algorithm, size_t k,
                        double epsilon, double tau, const uint32_t* stream,
                        size_t len, const sw_run_options* options,
                        sw_result** out);
SW_API void sw_result_free(sw_result* result);

SW_API size_t sw_result_set_size(const sw_result* result);
/* Selected ids, sorted ascending; valid until sw_result_free. */
SW_API const uint32_t* sw_result_set(const sw_result* result);
SW_API double sw_result_value(const sw_result* result);
SW_API uint64_t sw_result_oracle_calls(const sw_result* result);
SW_API size_t sw_result_stored_peak(const sw_result* result);
SW_API size_t sw_result_instances_peak(const sw_result* result);
SW_API double sw_result_wall_ms(const sw_result* result);
SW_API uint64_t sw_result_invariant_violations(const sw_result* result);
SW_API uint64_t sw_result_warnings(const sw_result* result);
/* Returns 1 and stores m for STREAK results, 0 otherwise. */
SW_API int sw_result_max_singleton(const sw_result* result, double* m);

/* ---- stream orders --------------------------------------------------- */

/* out must hold n ids. */
SW_API sw_status sw_order_random(size_t n, uint64_t seed, uint32_t* out);
/* out must hold 2k + d ids: u-elements and dummies, then v-elements. */
SW_API sw_status sw_order_adversarial(size_t k, size_t d, uint64_t seed,
                                      uint32_t* out);

/* ---- weak submodularity ratio ---------------------------------------- */

typedef struct sw_gamma sw_gamma;

SW_API sw_status sw_gamma_exact(sw_oracle* oracle, size_t r, unsigned threads,
                                sw_gamma** out);
SW_API sw_status sw_gamma_sampled(sw_oracle* oracle, size_t r, size_t trials,
                                  uint64_t seed, sw_gamma** out);
SW_API void sw_gamma_free(sw_gamma* gamma);
SW_API double sw_gamma_value(const sw_gamma* gamma);
SW_API size_t sw_gamma_r(const sw_gamma* gamma);
SW_API int sw_gamma_is_exact(const sw_gamma* gamma);
SW_API int sw_gamma_denominator_clamped(const sw_gamma* gamma);
SW_API uint64_t sw_gamma_pairs(const sw_gamma* gamma);
/* Witness sets, sorted ascending; S includes L. */
SW_API const uint32_t* sw_gamma_witness_l(const sw_gamma* gamma, size_t* len);
SW_API const uint32_t* sw_gamma_witness_s(const sw_gamma* gamma, size_t* len);

/* ---- closed-form guarantees ------------------------------------------ */

/* (1 - eps) gamma (3 - e^{-gamma/2} - 2 sqrt(2 - e^{-gamma/2})) / 2 */
SW_API sw_status sw_bound(double gamma, double epsilon, double* ratio);
/* (sqrt(2 - e^{-gamma/2}) - 1) / 2 */
SW_API sw_status sw_a_of_gamma(double gamma, double* a);
/* 2 + ln(9 k^3) / eps */
SW_API sw_status sw_instance_bound(size_t k, double epsilon, double* bound);

/* ---- experiments ----------------------------------------------------- */

typedef enum sw_order_kind {
  SW_ORDER_RANDOM = 0,
  SW_ORDER_ADVERSARIAL = 1, /* hard-instance oracles only */
  SW_ORDER_FILE = 2
} sw_order_kind;

typedef struct sw_algorithm {
  const char* name;
  double epsilon;
  double tau;
} sw_algorithm;

typedef struct sw_experiment_config {
  const char* objective_name; /* CSV label; NULL uses the oracle name */
  const sw_algorithm* algorithms;
  size_t n_algorithms;
  size_t k;
  const uint64_t* seeds;
  size_t n_seeds;
  size_t repetitions;
  sw_order_kind order;
  const char* order_path;  /* SW_ORDER_FILE */
  const char* output_path; /* CSV destination; NULL for none */
  unsigned jobs;
  size_t cache_capacity;
  unsigned threads;
} sw_experiment_config;

typedef struct sw_row {
  const char* algorithm;
  const char* objective;
  size_t n;
  size_t k;
  int has_epsilon;
  double epsilon;
  uint64_t seed;
  double value;
  uint64_t oracle_calls;
  size_t stored_peak;
  size_t instances_peak;
  double wall_ms;
  uint64_t invariant_violations;
  int has_max_singleton;
  double max_singleton;
} sw_row;

typedef struct sw_summary {
  const char* algorithm;
  int has_epsilon;
  double epsilon;
  size_t runs;
  double mean_value;
  double std_value;
  double mean_calls;
  double std_calls;
  double mean_wall_ms;
} sw_summary;

typedef struct sw_table sw_table;

SW_API void sw_experiment_defaults(sw_experiment_config* config);
SW_API sw_status sw_run_experiment(sw_oracle* oracle,
                                   const sw_experiment_config* config,
                                   sw_table** out);
SW_API void sw_table_free(sw_table* table);
SW_API size_t sw_table_row_count(const sw_table* table);
/* Strings in *row stay valid until sw_table_free. */
SW_API sw_status sw_table_row(const sw_table* table, size_t i, sw_row* row);
SW_API size_t sw_table_summary_count(const sw_table* table);
SW_API sw_status sw_table_summary(const sw_table* table, size_t i,
                                  sw_summary* summary);
/* NULL or "-" writes to stdout. */
SW_API sw_status sw_table_write_csv(const sw_table* table, const char* path);

/* ---- synthetic data -------------------------------------------------- */

typedef struct sw_synthetic_dims {
  size_t p;
  size_t rows;
  size_t planted;
  double noise;
  size_t n;
  size_t universe;
} sw_synthetic_dims;

SW_API void sw_synthetic_defaults(sw_synthetic_dims* dims);
/* kind: "pairwise-products", "planted-regression" or "coverage-random".
 * ground_set_size (may be NULL) receives the N the objective will expose. */
SW_API sw_status sw_generate(const char* kind, const sw_synthetic_dims* dims,
                             uint64_t seed, const char* path,
                             size_t* ground_set_size);

#ifdef __cplusplus
}  // extern "C"
#endif

#endif  // STREAMWEAK_STREAMWEAK_H_
