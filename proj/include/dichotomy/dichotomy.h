// Copyright 2026 The Dichotomy Authors
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

/* C interface to the dichotomy library. All objects are opaque handles
 * released with the matching *_free function. Every call returns a
 * dq_status; on failure dq_last_error() describes the problem (per
 * thread, valid until the next failing call on that thread). Strings
 * returned through char** are released with dq_string_free. */
#ifndef DICHOTOMY_DICHOTOMY_H_
#define DICHOTOMY_DICHOTOMY_H_

#include <stddef.h>
#include <stdint.h>

#if defined(DQ_BUILDING_LIBRARY)
#define DQ_API __attribute__((visibility("default")))
#else
#define DQ_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Values match the command-line exit codes. */
typedef enum dq_status {
  DQ_OK = 0,
  DQ_ERR_VALIDATION = 2,
  DQ_ERR_INFINITE = 3,
  DQ_ERR_PRECONDITION = 4,
  DQ_ERR_NEAR_CRITICAL = 5,
  DQ_ERR_NUMERICAL = 6,
  DQ_ERR_IO = 7,
  DQ_ERR_INTERNAL = 8
} dq_status;

typedef enum dq_metric { DQ_METRIC_TRACE = 0, DQ_METRIC_PURIFIED = 1 } dq_metric;

typedef enum dq_divergence_kind {
  DQ_RELATIVE_ENTROPY = 0,
  DQ_PETZ = 1,
  DQ_SANDWICHED = 2,
  DQ_DMIN = 3,
  DQ_DMAX = 4,
  DQ_VARIANCE = 5,
  DQ_HYPOTHESIS_TESTING = 6,
  DQ_SMOOTH_DMAX = 7
} dq_divergence_kind;

typedef struct dq_state dq_state;
typedef struct dq_dichotomy dq_dichotomy;
typedef struct dq_channel dq_channel;
typedef struct dq_gibbs dq_gibbs;

/* A divergence in bits; `infinite` is nonzero for +infinity. The variance
 * is reported in squared bits. */
typedef struct dq_value {
  double bits;
  int infinite;
} dq_value;

DQ_API const char* dq_version(void);
DQ_API const char* dq_last_error(void);
DQ_API void dq_string_free(char* s);

/* States. Entries are row-major, interleaved (re, im), 2*dim*dim doubles. */
DQ_API dq_status dq_state_create(size_t dim, const double* re_im, dq_state** out);
DQ_API dq_status dq_state_from_json(const char* text, dq_state** out);
DQ_API dq_status dq_state_load(const char* path, dq_state** out);
DQ_API void dq_state_free(dq_state* s);
DQ_API size_t dq_state_dim(const dq_state* s);
DQ_API dq_status dq_state_entries(const dq_state* s, double* re_im);
DQ_API dq_status dq_state_to_json(const dq_state* s, char** out);
DQ_API dq_status dq_state_dephase(const dq_state* s, dq_state** out);
DQ_API dq_status dq_state_distance(const dq_state* a, const dq_state* b, dq_metric metric,
                                   double* out);

/* Dichotomies (rho, sigma). */
DQ_API dq_status dq_dichotomy_create(const dq_state* rho, const dq_state* sigma,
                                     dq_dichotomy** out);
DQ_API dq_status dq_dichotomy_from_json(const char* text, dq_dichotomy** out);
DQ_API dq_status dq_dichotomy_load(const char* path, dq_dichotomy** out);
DQ_API void dq_dichotomy_free(dq_dichotomy* d);
DQ_API size_t dq_dichotomy_dim(const dq_dichotomy* d);
DQ_API int dq_dichotomy_is_classical(const dq_dichotomy* d);

/* `alpha` is used by the Renyi kinds, `eps` and `metric` by the smoothed
 * ones. */
typedef struct dq_divergence_params {
  double alpha;
  double eps;
  dq_metric metric;
} dq_divergence_params;

DQ_API dq_status dq_divergence(const dq_dichotomy* d, dq_divergence_kind kind,
                               const dq_divergence_params* params, dq_value* out);

/* Channels. */
typedef struct dq_synthesis_info {
  int borderline;         /* a condition held only within numerical slack */
  double dh_bits;         /* approximate mode only */
  double dmax_bits;       /* approximate mode only */
  double certified_bound; /* approximate mode only */
} dq_synthesis_info;

DQ_API dq_status dq_synthesize_exact(const dq_dichotomy* src, const dq_dichotomy* dst,
                                     dq_channel** out, dq_synthesis_info* info);
DQ_API dq_status dq_synthesize_approx(const dq_dichotomy* src, const dq_dichotomy* dst,
                                      double eps1, double eps2, dq_metric metric,
                                      dq_channel** out, dq_synthesis_info* info);
DQ_API dq_status dq_channel_from_json(const char* text, dq_channel** out);
DQ_API dq_status dq_channel_load(const char* path, dq_channel** out);
DQ_API dq_status dq_channel_to_json(const dq_channel* ch, char** out);
DQ_API dq_status dq_channel_random(size_t d_in, size_t d_out, size_t env_dim, uint64_t seed,
                                   dq_channel** out);
DQ_API void dq_channel_free(dq_channel* ch);
DQ_API dq_status dq_channel_apply(const dq_channel* ch, const dq_state* x, dq_state** out);
DQ_API dq_status dq_verify(const dq_channel* ch, const dq_dichotomy* src, const dq_dichotomy* dst,
                           dq_metric metric, double* sigma_error, double* rho_error);
DQ_API dq_status dq_channel_is_dio(const dq_channel* ch, int* out);

/* Tensor-power experiments. */
typedef struct dq_experiment {
  dq_metric metric;
  double eps_total;
  double eps_split; /* share of eps_total given to the hypothesis test */
  int n_max;
  int classical;    /* nonzero: log-domain route for diagonal pairs */
} dq_experiment;

typedef struct dq_record {
  int n;
  long m;
  int unbounded;
  double rate;
  double eps1;
  double eps2;
  double achieved_error;
  int certified;
  double dh_bits;
  double dmax_bits;
} dq_record;

typedef struct dq_exponent_point {
  int n;
  long m;
  double eps;
  double log2_value;
} dq_exponent_point;

typedef enum dq_regime { DQ_ERROR_DECAY = 0, DQ_STRONG_CONVERSE = 1 } dq_regime;

typedef struct dq_exponent_fit {
  double slope_bits_per_n;
  double intercept;
  double r_squared;
  dq_regime regime;
  double critical_rate;
  double lambda1;
  double lambda2;
  int fit_start_n;
} dq_exponent_fit;

/* `ns` may be NULL (default grid). Records are released with
 * dq_records_free. */
DQ_API dq_status dq_rate_curve(const dq_dichotomy* src, const dq_dichotomy* dst,
                               const dq_experiment* cfg, const int* ns, size_t ns_count,
                               dq_record** out, size_t* count);
DQ_API void dq_records_free(dq_record* records);

/* On DQ_ERR_NEAR_CRITICAL the fit still carries lambda1, lambda2 and the
 * critical rate. */
DQ_API dq_status dq_error_exponent_sweep(const dq_dichotomy* src, const dq_dichotomy* dst,
                                         const dq_experiment* cfg, double rate, const int* ns,
                                         size_t ns_count, dq_exponent_fit* fit,
                                         dq_exponent_point** points, size_t* count);
DQ_API void dq_points_free(dq_exponent_point* points);

/* Resource theories. */
typedef enum dq_athermality_verdict {
  DQ_ATHERMALITY_FEASIBLE = 0,
  DQ_ATHERMALITY_STRONG_CONVERSE = 1,
  DQ_ATHERMALITY_NEAR_CRITICAL = 2
} dq_athermality_verdict;

typedef struct dq_athermality_report {
  double lambda1;
  double lambda2;
  double free_energy1;
  double free_energy2;
  dq_athermality_verdict verdict;
} dq_athermality_report;

DQ_API dq_status dq_gibbs_create(size_t dim, const double* hamiltonian_re_im, double beta,
                                 dq_gibbs** out);
DQ_API dq_status dq_gibbs_from_json(const char* text, dq_gibbs** out);
DQ_API dq_status dq_gibbs_load(const char* path, dq_gibbs** out);
DQ_API void dq_gibbs_free(dq_gibbs* g);
DQ_API dq_status dq_gibbs_state(const dq_gibbs* g, dq_state** out);
/* Free energy in bits per unit inverse temperature; `residual` (may be
 * NULL) is the disagreement of the two closed forms. */
DQ_API dq_status dq_free_energy(const dq_state* rho, const dq_gibbs* g, double* value,
                                double* residual);
DQ_API dq_status dq_athermality(const dq_state* rho1, const dq_state* rho2, const dq_gibbs* g,
                                dq_athermality_report* out);
DQ_API dq_status dq_coherence_rate(const dq_state* rho, double* out);
DQ_API dq_status dq_dio_rate(const dq_state* rho, const dq_state* sigma, double* value,
                             int* unbounded);

#ifdef __cplusplus
}
#endif

#endif  /* DICHOTOMY_DICHOTOMY_H_ */
