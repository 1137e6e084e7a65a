/* Copyright 2026 The nbspec authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface of the nbspec library. All functions return 0 on success or a
 * nonzero error code (see the code list below); details of the most recent
 * failure on the calling thread are available through nbspec_last_error_*.
 * Strings written through char** out parameters are owned by the caller and
 * must be released with nbspec_string_free.
 */

#ifndef NBSPEC_H_
#define NBSPEC_H_

#include <stddef.h>
#include <stdint.h>

#ifndef NBSPEC_API
#if defined(_WIN32)
#define NBSPEC_API __declspec(dllimport)
#else
#define NBSPEC_API __attribute__((visibility("default")))
#endif
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Error codes, mirrored from the C++ core. */
enum {
  NBSPEC_OK = 0,
  NBSPEC_ERR_INVALID_EDGE = 1,
  NBSPEC_ERR_NO_MATCHING_EXISTS = 2,
  NBSPEC_ERR_REJECTION_BUDGET_EXHAUSTED = 3,
  NBSPEC_ERR_CONVERGENCE_FAILURE = 4,
  NBSPEC_ERR_REDUCIBLE_OPERATOR = 5,
  NBSPEC_ERR_DIMENSION_MISMATCH = 6,
  NBSPEC_ERR_NOT_REGULAR = 7,
  NBSPEC_ERR_ENUMERATION_BUDGET = 8,
  NBSPEC_ERR_PRECONDITION_TANGLED = 9,
  NBSPEC_ERR_HYPOTHESIS_FAILED = 10,
  NBSPEC_ERR_CONTAINMENT_VIOLATION = 11,
  NBSPEC_ERR_EMPTY_SAMPLE = 12,
  NBSPEC_ERR_PRECONDITION_FAILED = 13,
  NBSPEC_ERR_INVALID_PATH = 14,
  NBSPEC_ERR_IO_FAILURE = 15,
  NBSPEC_ERR_UNKNOWN = 99
};

NBSPEC_API const char* nbspec_version(void);

/* Stable name of an error code ("Ok", "IoFailure", ...). */
NBSPEC_API const char* nbspec_error_code_name(int code);

/* Last error on the calling thread. The message pointer stays valid until
 * the next failing nbspec call on the same thread. */
NBSPEC_API int nbspec_last_error_code(void);
NBSPEC_API const char* nbspec_last_error_message(void);

NBSPEC_API void nbspec_string_free(char* s);

/* Opaque multigraph handle. */
typedef struct nbspec_graph nbspec_graph;

/* Parses the textual graph format. */
NBSPEC_API int nbspec_graph_parse(const char* text, nbspec_graph** out);

/* Resolves a named graph ("k4", "bouquet2", "cycle5", ...) or reads a graph
 * file at the given path. */
NBSPEC_API int nbspec_graph_resolve(const char* name_or_path, nbspec_graph** out);

NBSPEC_API int nbspec_graph_format(const nbspec_graph* g, char** text_out);

NBSPEC_API int nbspec_graph_counts(const nbspec_graph* g, size_t* n_vertices_out,
                        size_t* n_edges_out, size_t* n_actual_vertices_out);

NBSPEC_API void nbspec_graph_free(nbspec_graph* g);

/* Samples a uniform simple d-regular graph on n vertices by rejection from
 * the configuration model. Outputs are optional (pass NULL to skip). */
NBSPEC_API int nbspec_sample_regular(size_t n, size_t d, uint64_t seed,
                          size_t max_attempts, char** graph_text_out,
                          char** matching_text_out, size_t* attempts_out);

/* Samples uniform permutations for a degree-n lift of the base graph and
 * writes them in the textual permutation format. */
NBSPEC_API int nbspec_sample_lift(const nbspec_graph* base, size_t n, uint64_t seed,
                       char** perms_text_out);

/* Spectral report of a regular multigraph as a JSON object with keys
 * "n", "d", "eigenvalues", "mu", "mu2_or_mun", "ramanujan",
 * "nb_second_modulus". Fails with NBSPEC_ERR_NOT_REGULAR otherwise. */
NBSPEC_API int nbspec_spectral_report_json(const nbspec_graph* g, int iterative,
                                char** json_out);

/* Tangle check: sets *tangle_free_out to 1 or 0; when tangled and
 * witness_out is non-NULL it receives a vertex whose radius-ell ball
 * carries at least two cycles. */
NBSPEC_API int nbspec_tangle_check(const nbspec_graph* g, size_t ell,
                        int* tangle_free_out, uint32_t* witness_out);

/* Verifies the exact telescoping decomposition on a seeded uniform matching
 * instance; *ok_out gets 1 or 0, *worst_out the largest entry residual. */
NBSPEC_API int nbspec_verify_decomposition(size_t n, size_t d, size_t ell, uint64_t seed,
                                int* ok_out, double* worst_out);

/* Exhaustive path-expectation survey over half-edge spaces with n d <= 12;
 * writes the CSV table and the largest implied constant. */
NBSPEC_API int nbspec_oracle_survey(size_t n, size_t d, size_t max_k, char** csv_out,
                         double* max_c_out);

/* Runs an experiment described by a JSON config with keys "experiment"
 * ("friedman", "lift" or "identity"), "n", "d", "ell", "trials",
 * "master_seed", "base_graph", "threads", "max_attempts"; missing keys take
 * defaults. Outputs are optional. *pass_out (optional) receives 1 unless a
 * verification inside the run failed. */
NBSPEC_API int nbspec_run_experiment(const char* config_json, char** jsonl_out,
                          char** csv_out, char** report_out, int* pass_out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* NBSPEC_H_ */
