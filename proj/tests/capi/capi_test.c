/*
 * (C) Copyright 2026 rdet developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
/* Exercises the C interface from C: handles, status codes, buffers. */

#include <math.h>
#include <stdio.h>
#include <string.h>

#include "rdet/rdet.h"

static int failures = 0;

#define EXPECT(cond)                                                \
  do {                                                              \
    if (!(cond)) {                                                  \
      ++failures;                                                   \
      fprintf(stderr, "%s:%d: expectation failed: %s\n", __FILE__, \
              __LINE__, #cond);                                     \
    }                                                               \
  } while (0)

static void test_diagnostics(void) {
  rdet_kind k;
  EXPECT(strcmp(rdet_version(), "1.0.0") == 0);
  EXPECT(strcmp(rdet_status_string(RDET_OK), "ok") == 0);
  EXPECT(rdet_parse_kind("wishart", &k) == RDET_OK && k == RDET_WISHART);
  EXPECT(rdet_parse_kind("gram", &k) == RDET_OK && k == RDET_GRAM);
  EXPECT(rdet_parse_kind("bogus", &k) != RDET_OK);
  EXPECT(strlen(rdet_last_error()) > 0);
  EXPECT(rdet_parse_kind(NULL, &k) == RDET_ERR_NULL_POINTER);
  EXPECT(strcmp(rdet_kind_string(RDET_RADIAL), "radial") == 0);
  EXPECT(strcmp(rdet_branch_string(RDET_BRANCH_AFFINE_TAIL), "affine-tail") == 0);
}

static void test_streams_and_paths(void) {
  rdet_stream *a = NULL, *b = NULL;
  rdet_path *pa = NULL, *pb = NULL;
  double va[51], vb[51], u;
  int64_t n = 0;
  int i, same = 1;
  EXPECT(rdet_stream_derive(42, 3, &a) == RDET_OK);
  EXPECT(rdet_stream_derive(42, 3, &b) == RDET_OK);
  EXPECT(rdet_path_sample(RDET_GRAM, 50, a, &pa) == RDET_OK);
  EXPECT(rdet_path_sample(RDET_GRAM, 50, b, &pb) == RDET_OK);
  EXPECT(rdet_path_n(pa, &n) == RDET_OK && n == 50);
  EXPECT(rdet_path_values(pa, va, 50) == RDET_ERR_BUFFER_TOO_SMALL);
  EXPECT(rdet_path_values(pa, va, 51) == RDET_OK);
  EXPECT(rdet_path_values(pb, vb, 51) == RDET_OK);
  for (i = 0; i <= 50; ++i) same = same && va[i] == vb[i];
  EXPECT(same);
  EXPECT(va[0] == 0.0 && va[1] == 0.0);
  for (i = 0; i <= 50; ++i) EXPECT(va[i] <= 0.0);
  EXPECT(rdet_stream_uniform(a, &u) == RDET_OK && u > 0.0 && u < 1.0);
  EXPECT(rdet_stream_normal(a, &u) == RDET_OK && isfinite(u));
  rdet_path_destroy(pa);
  rdet_path_destroy(pb);
  pa = NULL;
  EXPECT(rdet_path_sample(RDET_GRAM, 0, a, &pa) == RDET_ERR_DOMAIN);
  EXPECT(pa == NULL);
  rdet_stream_destroy(a);
  rdet_stream_destroy(b);
  rdet_stream_destroy(NULL);
  rdet_path_destroy(NULL);
}

static void test_theory(void) {
  double v, d, m, lo, hi, atom;
  EXPECT(rdet_J(0.0, &v) == RDET_OK && v == 1.0);
  EXPECT(rdet_lln_limit(1.0, &v) == RDET_OK && v == -1.0);
  EXPECT(rdet_clt_curves(RDET_WISHART, 0.5, &d, &v) == RDET_OK);
  EXPECT(fabs(v + 2.0 * log(0.5)) < 1e-15);
  EXPECT(rdet_exact_moments(RDET_GRAM, 2, 2, &m, &v) == RDET_OK);
  EXPECT(fabs(m + 2.0 * log(2.0)) < 1e-12);
  EXPECT(rdet_mp_log_moment(0.5, &v) == RDET_OK && fabs(v - (log(2.0) - 1.0)) < 1e-12);
  EXPECT(rdet_mp_support(0.25, 1.0, &lo, &hi, &atom) == RDET_OK);
  EXPECT(fabs(lo - 0.25) < 1e-15 && fabs(hi - 2.25) < 1e-15 && atom == 0.0);
  EXPECT(rdet_endpoint_constants(RDET_RADIAL, &m, &v) == RDET_ERR_UNSUPPORTED);
  EXPECT(rdet_lln_limit(1.5, &v) == RDET_ERR_DOMAIN);
  EXPECT(rdet_finite_n_ncgf(RDET_GRAM, 1000, 0.5, 0.0, &v) == RDET_OK && v == 0.0);
  EXPECT(rdet_mellin_log_det(10, 3, 0.0, &v) == RDET_OK && fabs(v) < 1e-14);
}

static void test_rates(void) {
  rdet_rate_result r;
  rdet_smooth_path* sp = NULL;
  double xi, lln, t[11], val[11];
  size_t size = 0;
  EXPECT(rdet_lln_limit(0.5, &lln) == RDET_OK);
  EXPECT(rdet_marginal_rate(RDET_GRAM, 0.5, lln, &r) == RDET_OK);
  EXPECT(r.value == 0.0 && r.branch == RDET_BRANCH_ZERO);
  EXPECT(rdet_marginal_rate(RDET_GRAM, 0.5, -0.5, &r) == RDET_OK);
  EXPECT(fabs(r.value - 0.0625) < 1e-12);
  EXPECT(rdet_marginal_rate(RDET_GRAM, 0.5, -0.7, &r) == RDET_OK);
  EXPECT(r.branch == RDET_BRANCH_AFFINE_TAIL);
  EXPECT(rdet_marginal_rate(RDET_GRAM, 0.5, 0.1, &r) == RDET_OK);
  EXPECT(r.branch == RDET_BRANCH_INFINITE && isinf(r.value) && !r.has_theta);
  EXPECT(rdet_phi(RDET_WISHART, 0.5, 0.3, &xi) == RDET_OK);
  EXPECT(rdet_marginal_rate(RDET_WISHART, 0.5, xi, &r) == RDET_OK);
  EXPECT(r.has_theta && fabs(r.theta - 0.3) < 1e-9 && r.branch == RDET_BRANCH_INTERIOR);
  EXPECT(rdet_optimal_path(RDET_GRAM, 0.5, 0.3, 11, &sp) == RDET_OK);
  EXPECT(rdet_smooth_path_size(sp, &size) == RDET_OK && size == 11);
  EXPECT(rdet_smooth_path_data(sp, t, val, NULL, 10) == RDET_ERR_BUFFER_TOO_SMALL);
  EXPECT(rdet_smooth_path_data(sp, t, val, NULL, 11) == RDET_OK);
  EXPECT(t[0] == 0.0 && fabs(t[10] - 0.5) < 1e-15 && val[0] == 0.0);
  rdet_smooth_path_destroy(sp);
  EXPECT(rdet_marginal_rate(RDET_GRAM, 1.5, -0.1, &r) == RDET_ERR_DOMAIN);
}

static void test_verify(void) {
  rdet_verify_options opts;
  rdet_report* report = NULL;
  const char* json = NULL;
  size_t count = 0;
  int pass = 0;
  rdet_check_view view;
  int64_t ns[2] = {50, 100};
  EXPECT(rdet_experiment_count() == 6);
  EXPECT(strcmp(rdet_experiment_name(0), "lln") == 0);
  EXPECT(rdet_experiment_name(6) == NULL);
  rdet_verify_options_init(&opts);
  EXPECT(opts.base_seed == 42);
  EXPECT(rdet_verify("rates", &opts, &report) == RDET_OK);
  EXPECT(rdet_report_pass(report, &pass) == RDET_OK && pass == 1);
  EXPECT(rdet_report_json(report, &json) == RDET_OK && strstr(json, "\"reports\"") != NULL);
  EXPECT(rdet_report_check_count(report, &count) == RDET_OK && count > 20);
  EXPECT(rdet_report_check(report, 0, &view) == RDET_OK);
  EXPECT(strcmp(view.experiment, "rates") == 0 && strcmp(view.kind, "gram") == 0);
  EXPECT(rdet_report_check(report, count, &view) == RDET_ERR_DOMAIN);
  rdet_report_destroy(report);
  report = NULL;
  opts.n = ns;
  opts.n_count = 2;
  opts.replicates = 10;
  EXPECT(rdet_verify("lln", &opts, &report) == RDET_OK);
  EXPECT(rdet_report_check_count(report, &count) == RDET_OK && count == 2 * 3);
  rdet_report_destroy(report);
  report = NULL;
  EXPECT(rdet_verify("nope", NULL, &report) == RDET_ERR_INVALID_ARGUMENT);
  EXPECT(report == NULL);
  opts.replicates = -1;
  EXPECT(rdet_verify("lln", &opts, &report) == RDET_ERR_INVALID_ARGUMENT);
  rdet_report_destroy(NULL);
}

int main(void) {
  test_diagnostics();
  test_streams_and_paths();
  test_theory();
  test_rates();
  test_verify();
  if (failures) {
    fprintf(stderr, "%d expectation(s) failed\n", failures);
    return 1;
  }
  printf("capi_test: all expectations passed\n");
  return 0;
}
