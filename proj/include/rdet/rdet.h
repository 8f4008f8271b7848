/*
 * (C) Copyright 2026 rdet developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#ifndef RDET_RDET_H
#define RDET_RDET_H

/*
 * C interface of the rdet library: log-determinant processes of Gram and
 * Wishart random matrices, their limit theory, rate functions and the
 * verification harness.
 *
 * Every function returns an rdet_status. On failure the message of the most
 * recent error on the calling thread is available from rdet_last_error().
 * Handles are opaque; each *_create / producing call is paired with a
 * *_destroy, which accepts NULL.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(RDET_BUILDING_LIBRARY)
#define RDET_API __declspec(dllexport)
#else
#define RDET_API __declspec(dllimport)
#endif
#else
#define RDET_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rdet_status {
  RDET_OK = 0,
  RDET_ERR_DOMAIN = 1,
  RDET_ERR_DIVERGENT_CGF = 2,
  RDET_ERR_UNSUPPORTED = 3,
  RDET_ERR_NUMERIC = 4,
  RDET_ERR_RANK_DEFICIENT = 5,
  RDET_ERR_DEGENERATE_SPECTRUM = 6,
  RDET_ERR_INSUFFICIENT_DATA = 7,
  RDET_ERR_INVALID_ARGUMENT = 8,
  RDET_ERR_IO = 9,
  RDET_ERR_NULL_POINTER = 100,
  RDET_ERR_BUFFER_TOO_SMALL = 101,
  RDET_ERR_INTERNAL = 102
} rdet_status;

typedef enum rdet_kind { RDET_GRAM = 0, RDET_WISHART = 1, RDET_RADIAL = 2 } rdet_kind;

typedef enum rdet_branch {
  RDET_BRANCH_INTERIOR = 0,
  RDET_BRANCH_AFFINE_TAIL = 1,
  RDET_BRANCH_ZERO = 2,
  RDET_BRANCH_INFINITE = 3
} rdet_branch;

typedef struct rdet_stream rdet_stream;
typedef struct rdet_path rdet_path;
typedef struct rdet_smooth_path rdet_smooth_path;
typedef struct rdet_report rdet_report;

/* ---- diagnostics ---- */

RDET_API const char* rdet_version(void);
RDET_API const char* rdet_status_string(rdet_status status);
/* Message of the last failure on this thread; "" when none. */
RDET_API const char* rdet_last_error(void);
RDET_API rdet_status rdet_parse_kind(const char* name, rdet_kind* out);
RDET_API const char* rdet_kind_string(rdet_kind kind);
RDET_API const char* rdet_branch_string(rdet_branch branch);

/* ---- random streams ---- */

RDET_API rdet_status rdet_stream_create(uint64_t seed, rdet_stream** out);
/* Substream for replicate index rep of a base seed. */
RDET_API rdet_status rdet_stream_derive(uint64_t base_seed, uint64_t rep, rdet_stream** out);
RDET_API void rdet_stream_destroy(rdet_stream* stream);
RDET_API rdet_status rdet_stream_uniform(rdet_stream* stream, double* out);
RDET_API rdet_status rdet_stream_normal(rdet_stream* stream, double* out);

/* ---- process paths (values at r = 0..n) ---- */

RDET_API rdet_status rdet_path_sample(rdet_kind kind, int64_t n, rdet_stream* stream,
                                      rdet_path** out);
RDET_API void rdet_path_destroy(rdet_path* path);
RDET_API rdet_status rdet_path_n(const rdet_path* path, int64_t* n);
/* Copies n + 1 values; capacity is the length of buf. */
RDET_API rdet_status rdet_path_values(const rdet_path* path, double* buf, size_t capacity);

/* ---- limit theory ---- */

RDET_API rdet_status rdet_J(double u, double* out);
RDET_API rdet_status rdet_F(double t, double* out);
RDET_API rdet_status rdet_lln_limit(double t, double* out);
RDET_API rdet_status rdet_clt_curves(rdet_kind kind, double t, double* drift, double* variance);
RDET_API rdet_status rdet_endpoint_constants(rdet_kind kind, double* mean_const,
                                             double* var_const);
/* Exact mean and variance of the process value at r = p. */
RDET_API rdet_status rdet_exact_moments(rdet_kind kind, int64_t n, int64_t p, double* mean,
                                        double* variance);
RDET_API rdet_status rdet_mp_log_moment(double c, double* out);
RDET_API rdet_status rdet_mp_density(double c, double sigma2, double x, double* out);
/* Support edges and the mass of the atom at zero (positive only for c > 1). */
RDET_API rdet_status rdet_mp_support(double c, double sigma2, double* lower, double* upper,
                                     double* atom);
RDET_API rdet_status rdet_mellin_log_det(int64_t n, int64_t r, double s, double* out);
RDET_API rdet_status rdet_finite_n_ncgf(rdet_kind kind, int64_t n, double T, double theta,
                                        double* out);

/* ---- rate functions ---- */

typedef struct rdet_rate_result {
  double value;
  double theta; /* NaN when has_theta == 0 */
  int has_theta;
  rdet_branch branch;
} rdet_rate_result;

RDET_API rdet_status rdet_limit_cgf(rdet_kind kind, double T, double theta, double* out);
RDET_API rdet_status rdet_theta_lower(rdet_kind kind, double T, double* out);
RDET_API rdet_status rdet_phi(rdet_kind kind, double T, double theta, double* xi);
RDET_API rdet_status rdet_marginal_rate(rdet_kind kind, double T, double xi,
                                        rdet_rate_result* out);
RDET_API rdet_status rdet_spectral_rate_mp(double T, double sigma2, double* out);

RDET_API rdet_status rdet_optimal_path(rdet_kind kind, double T, double theta, int points,
                                       rdet_smooth_path** out);
RDET_API void rdet_smooth_path_destroy(rdet_smooth_path* path);
RDET_API rdet_status rdet_smooth_path_size(const rdet_smooth_path* path, size_t* size);
/* Copies size entries into each non-NULL buffer. */
RDET_API rdet_status rdet_smooth_path_data(const rdet_smooth_path* path, double* t,
                                           double* value, double* derivative, size_t capacity);

/* ---- verification harness ---- */

typedef struct rdet_verify_options {
  uint64_t base_seed;   /* used when has_seed != 0; default 42 */
  int has_seed;
  int replicates;       /* 0 keeps each experiment's default */
  const int64_t* n;     /* overrides the n list when n_count > 0 */
  size_t n_count;
  int heavy;            /* larger exact-moment grids */
  const char* dump_dir; /* per-sample CSV output; NULL disables */
  int threads;          /* 0: RDET_THREADS or hardware concurrency */
} rdet_verify_options;

RDET_API void rdet_verify_options_init(rdet_verify_options* options);
RDET_API size_t rdet_experiment_count(void);
/* Registered name at index i, or NULL when out of range. */
RDET_API const char* rdet_experiment_name(size_t i);
/* name is a registered experiment or "all" / NULL for every experiment. */
RDET_API rdet_status rdet_verify(const char* name, const rdet_verify_options* options,
                                 rdet_report** out);
RDET_API void rdet_report_destroy(rdet_report* report);
RDET_API rdet_status rdet_report_pass(const rdet_report* report, int* pass);
/* JSON text; the pointer stays valid until the report is destroyed. */
RDET_API rdet_status rdet_report_json(const rdet_report* report, const char** json);
RDET_API rdet_status rdet_report_check_count(const rdet_report* report, size_t* count);

typedef struct rdet_check_view {
  const char* experiment;
  const char* kind;
  const char* name;
  double observed;
  double expected;
  double tolerance;
  const char* comparison;
  int pass;
  const char* note;
} rdet_check_view;

/* Views stay valid until the report is destroyed. */
RDET_API rdet_status rdet_report_check(const rdet_report* report, size_t index,
                                       rdet_check_view* out);

#ifdef __cplusplus
}
#endif

#endif /* RDET_RDET_H */
