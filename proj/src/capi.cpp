/*
 * (C) Copyright 2026 rdet developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "rdet/rdet.h"

#include <cmath>
#include <exception>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "rdet/error.hpp"
#include "rdet/harness.hpp"
#include "rdet/rates.hpp"
#include "rdet/rng.hpp"
#include "rdet/samplers.hpp"
#include "rdet/theory.hpp"

struct rdet_stream {
  rdet::RngStream rng;
};

struct rdet_path {
  rdet::ProcessPath path;
};

struct rdet_smooth_path {
  rdet::rates::SmoothPath path;
};

struct rdet_report {
  std::vector<rdet::harness::ExperimentReport> reports;
  std::string json;
  // Flattened check index: (report, check).
  std::vector<std::pair<std::size_t, std::size_t>> index;
};

namespace {

thread_local std::string last_error;

rdet_status fail(rdet_status status, const std::string& message) {
  last_error = message;
  return status;
}

// Runs fn, translating exceptions into status codes.
template <class Fn>
rdet_status guarded(Fn&& fn) {
  try {
    fn();
    return RDET_OK;
  } catch (const rdet::Error& e) {
    return fail(static_cast<rdet_status>(static_cast<int>(e.code())), e.what());
  } catch (const std::bad_alloc&) {
    return fail(RDET_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(RDET_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(RDET_ERR_INTERNAL, "unknown exception");
  }
}

#define RDET_REQUIRE_PTR(p) \
  if ((p) == nullptr) return fail(RDET_ERR_NULL_POINTER, "null pointer argument: " #p)

rdet::EnsembleKind to_kind(rdet_kind kind) {
  switch (kind) {
    case RDET_GRAM: return rdet::EnsembleKind::Gram;
    case RDET_WISHART: return rdet::EnsembleKind::Wishart;
    case RDET_RADIAL: return rdet::EnsembleKind::Radial;
  }
  rdet::raise(rdet::ErrorCode::InvalidArgument, "unknown ensemble kind");
}

rdet_branch to_branch(rdet::rates::Branch b) {
  switch (b) {
    case rdet::rates::Branch::Interior: return RDET_BRANCH_INTERIOR;
    case rdet::rates::Branch::AffineTail: return RDET_BRANCH_AFFINE_TAIL;
    case rdet::rates::Branch::Zero: return RDET_BRANCH_ZERO;
    case rdet::rates::Branch::Infinite: return RDET_BRANCH_INFINITE;
  }
  return RDET_BRANCH_INTERIOR;
}

}  // namespace

extern "C" {

const char* rdet_version(void) { return "1.0.0"; }

const char* rdet_status_string(rdet_status status) {
  switch (status) {
    case RDET_OK: return "ok";
    case RDET_ERR_NULL_POINTER: return "null-pointer";
    case RDET_ERR_BUFFER_TOO_SMALL: return "buffer-too-small";
    case RDET_ERR_INTERNAL: return "internal";
    default: break;
  }
  const int code = static_cast<int>(status);
  if (code >= 1 && code <= static_cast<int>(rdet::ErrorCode::Io))
    return rdet::to_string(static_cast<rdet::ErrorCode>(code));
  return "unknown";
}

const char* rdet_last_error(void) { return last_error.c_str(); }

rdet_status rdet_parse_kind(const char* name, rdet_kind* out) {
  RDET_REQUIRE_PTR(name);
  RDET_REQUIRE_PTR(out);
  return guarded([&] {
    switch (rdet::parse_kind(name)) {
      case rdet::EnsembleKind::Gram: *out = RDET_GRAM; break;
      case rdet::EnsembleKind::Wishart: *out = RDET_WISHART; break;
      case rdet::EnsembleKind::Radial: *out = RDET_RADIAL; break;
    }
  });
}

const char* rdet_kind_string(rdet_kind kind) {
  switch (kind) {
    case RDET_GRAM: return "gram";
    case RDET_WISHART: return "wishart";
    case RDET_RADIAL: return "radial";
  }
  return "unknown";
}

const char* rdet_branch_string(rdet_branch branch) {
  switch (branch) {
    case RDET_BRANCH_INTERIOR: return rdet::rates::to_string(rdet::rates::Branch::Interior);
    case RDET_BRANCH_AFFINE_TAIL: return rdet::rates::to_string(rdet::rates::Branch::AffineTail);
    case RDET_BRANCH_ZERO: return rdet::rates::to_string(rdet::rates::Branch::Zero);
    case RDET_BRANCH_INFINITE: return rdet::rates::to_string(rdet::rates::Branch::Infinite);
  }
  return "unknown";
}

rdet_status rdet_stream_create(uint64_t seed, rdet_stream** out) {
  RDET_REQUIRE_PTR(out);
  *out = nullptr;
  return guarded([&] { *out = new rdet_stream{rdet::RngStream(seed)}; });
}

rdet_status rdet_stream_derive(uint64_t base_seed, uint64_t rep, rdet_stream** out) {
  RDET_REQUIRE_PTR(out);
  *out = nullptr;
  return guarded([&] { *out = new rdet_stream{rdet::derive_stream(base_seed, rep)}; });
}

void rdet_stream_destroy(rdet_stream* stream) { delete stream; }

rdet_status rdet_stream_uniform(rdet_stream* stream, double* out) {
  RDET_REQUIRE_PTR(stream);
  RDET_REQUIRE_PTR(out);
  return guarded([&] { *out = stream->rng.uniform(); });
}

rdet_status rdet_stream_normal(rdet_stream* stream, double* out) {
  RDET_REQUIRE_PTR(stream);
  RDET_REQUIRE_PTR(out);
  return guarded([&] { *out = stream->rng.normal(); });
}

rdet_status rdet_path_sample(rdet_kind kind, int64_t n, rdet_stream* stream, rdet_path** out) {
  RDET_REQUIRE_PTR(stream);
  RDET_REQUIRE_PTR(out);
  *out = nullptr;
  return guarded([&] { *out = new rdet_path{rdet::sample_path(to_kind(kind), n, stream->rng)}; });
}

void rdet_path_destroy(rdet_path* path) { delete path; }

rdet_status rdet_path_n(const rdet_path* path, int64_t* n) {
  RDET_REQUIRE_PTR(path);
  RDET_REQUIRE_PTR(n);
  *n = path->path.n;
  return RDET_OK;
}

rdet_status rdet_path_values(const rdet_path* path, double* buf, size_t capacity) {
  RDET_REQUIRE_PTR(path);
  RDET_REQUIRE_PTR(buf);
  const auto& v = path->path.values;
  if (capacity < v.size())
    return fail(RDET_ERR_BUFFER_TOO_SMALL, "path buffer needs " + std::to_string(v.size()) + " entries");
  std::copy(v.begin(), v.end(), buf);
  return RDET_OK;
}

rdet_status rdet_J(double u, double* out) {
  RDET_REQUIRE_PTR(out);
  return guarded([&] { *out = rdet::theory::J(u); });
}

rdet_status rdet_F(double t, double* out) {
  RDET_REQUIRE_PTR(out);
  return guarded([&] { *out = rdet::theory::F(t); });
}

rdet_status rdet_lln_limit(double t, double* out) {
  RDET_REQUIRE_PTR(out);
  return guarded([&] { *out = rdet::theory::lln_limit(t); });
}

rdet_status rdet_clt_curves(rdet_kind kind, double t, double* drift, double* variance) {
  RDET_REQUIRE_PTR(drift);
  RDET_REQUIRE_PTR(variance);
  return guarded([&] {
    const auto c = rdet::theory::clt_curves(to_kind(kind), t);
    *drift = c.drift;
    *variance = c.variance;
  });
}

rdet_status rdet_endpoint_constants(rdet_kind kind, double* mean_const, double* var_const) {
  RDET_REQUIRE_PTR(mean_const);
  RDET_REQUIRE_PTR(var_const);
  return guarded([&] {
    const auto c = rdet::theory::endpoint_constants(to_kind(kind));
    *mean_const = c.mean_const;
    *var_const = c.var_const;
  });
}

rdet_status rdet_exact_moments(rdet_kind kind, int64_t n, int64_t p, double* mean,
                               double* variance) {
  RDET_REQUIRE_PTR(mean);
  RDET_REQUIRE_PTR(variance);
  return guarded([&] {
    const auto m = rdet::theory::variance_report(to_kind(kind), n, p);
    *mean = m.mean;
    *variance = m.variance;
  });
}

rdet_status rdet_mp_log_moment(double c, double* out) {
  RDET_REQUIRE_PTR(out);
  return guarded([&] { *out = rdet::theory::mp_log_moment(c); });
}

rdet_status rdet_mp_density(double c, double sigma2, double x, double* out) {
  RDET_REQUIRE_PTR(out);
  return guarded([&] { *out = rdet::theory::MpLaw(c, sigma2).density(x); });
}

rdet_status rdet_mp_support(double c, double sigma2, double* lower, double* upper, double* atom) {
  RDET_REQUIRE_PTR(lower);
  RDET_REQUIRE_PTR(upper);
  RDET_REQUIRE_PTR(atom);
  return guarded([&] {
    const rdet::theory::MpLaw law(c, sigma2);
    *lower = law.lower_edge();
    *upper = law.upper_edge();
    *atom = law.atom();
  });
}

rdet_status rdet_mellin_log_det(int64_t n, int64_t r, double s, double* out) {
  RDET_REQUIRE_PTR(out);
  return guarded([&] { *out = rdet::theory::mellin_log_det(n, r, s); });
}

rdet_status rdet_finite_n_ncgf(rdet_kind kind, int64_t n, double T, double theta, double* out) {
  RDET_REQUIRE_PTR(out);
  return guarded([&] { *out = rdet::theory::finite_n_ncgf(to_kind(kind), n, T, theta); });
}

rdet_status rdet_limit_cgf(rdet_kind kind, double T, double theta, double* out) {
  RDET_REQUIRE_PTR(out);
  return guarded([&] { *out = rdet::rates::L_T(to_kind(kind), T, theta); });
}

rdet_status rdet_theta_lower(rdet_kind kind, double T, double* out) {
  RDET_REQUIRE_PTR(out);
  return guarded([&] { *out = rdet::rates::theta_lower(to_kind(kind), T); });
}

rdet_status rdet_phi(rdet_kind kind, double T, double theta, double* xi) {
  RDET_REQUIRE_PTR(xi);
  return guarded([&] { *xi = rdet::rates::phi(to_kind(kind), T, theta); });
}

rdet_status rdet_marginal_rate(rdet_kind kind, double T, double xi, rdet_rate_result* out) {
  RDET_REQUIRE_PTR(out);
  return guarded([&] {
    const auto r = rdet::rates::marginal_rate(to_kind(kind), T, xi);
    out->value = r.value;
    out->has_theta = r.theta.has_value() ? 1 : 0;
    out->theta = r.theta.value_or(std::nan(""));
    out->branch = to_branch(r.branch);
  });
}

rdet_status rdet_spectral_rate_mp(double T, double sigma2, double* out) {
  RDET_REQUIRE_PTR(out);
  return guarded([&] { *out = rdet::rates::spectral_rate_mp(T, sigma2); });
}

rdet_status rdet_optimal_path(rdet_kind kind, double T, double theta, int points,
                              rdet_smooth_path** out) {
  RDET_REQUIRE_PTR(out);
  *out = nullptr;
  return guarded([&] {
    *out = new rdet_smooth_path{rdet::rates::optimal_path(to_kind(kind), T, theta, points)};
  });
}

void rdet_smooth_path_destroy(rdet_smooth_path* path) { delete path; }

rdet_status rdet_smooth_path_size(const rdet_smooth_path* path, size_t* size) {
  RDET_REQUIRE_PTR(path);
  RDET_REQUIRE_PTR(size);
  *size = path->path.t.size();
  return RDET_OK;
}

rdet_status rdet_smooth_path_data(const rdet_smooth_path* path, double* t, double* value,
                                  double* derivative, size_t capacity) {
  RDET_REQUIRE_PTR(path);
  const auto& p = path->path;
  if (capacity < p.t.size())
    return fail(RDET_ERR_BUFFER_TOO_SMALL, "path buffer needs " + std::to_string(p.t.size()) + " entries");
  if (t) std::copy(p.t.begin(), p.t.end(), t);
  if (value) std::copy(p.value.begin(), p.value.end(), value);
  if (derivative) std::copy(p.derivative.begin(), p.derivative.end(), derivative);
  return RDET_OK;
}

void rdet_verify_options_init(rdet_verify_options* options) {
  if (!options) return;
  *options = rdet_verify_options{};
  options->base_seed = 42;
}

size_t rdet_experiment_count(void) { return rdet::harness::experiment_names().size(); }

const char* rdet_experiment_name(size_t i) {
  const auto& names = rdet::harness::experiment_names();
  return i < names.size() ? names[i].c_str() : nullptr;
}

rdet_status rdet_verify(const char* name, const rdet_verify_options* options, rdet_report** out) {
  RDET_REQUIRE_PTR(out);
  *out = nullptr;
  rdet_verify_options opts;
  rdet_verify_options_init(&opts);
  if (options) opts = *options;
  if (opts.n_count > 0 && opts.n == nullptr)
    return fail(RDET_ERR_NULL_POINTER, "n_count > 0 with a null n list");
  return guarded([&] {
    std::vector<std::string> names;
    const std::string which = name ? name : "all";
    if (which == "all")
      names = rdet::harness::experiment_names();
    else
      names.push_back(which);
    std::vector<rdet::harness::ExperimentSpec> specs;
    for (const auto& nm : names) {
      for (auto spec : rdet::harness::default_specs(nm, opts.heavy != 0)) {
        if (opts.has_seed) spec.base_seed = opts.base_seed;
        if (opts.replicates < 0)
          rdet::raise(rdet::ErrorCode::InvalidArgument, "replicates must be positive");
        if (opts.replicates > 0) {
          spec.replicates = opts.replicates;
          if (spec.settings.count("sde_replicates")) spec.settings["sde_replicates"] = opts.replicates;
        }
        if (opts.n_count > 0) spec.n.assign(opts.n, opts.n + opts.n_count);
        if (opts.dump_dir) spec.dump_dir = opts.dump_dir;
        spec.threads = opts.threads;
        rdet::harness::validate(spec);
        specs.push_back(std::move(spec));
      }
    }
    auto report = std::make_unique<rdet_report>();
    for (const auto& spec : specs) report->reports.push_back(rdet::harness::run(spec));
    report->json = rdet::harness::to_json(report->reports);
    for (std::size_t i = 0; i < report->reports.size(); ++i)
      for (std::size_t j = 0; j < report->reports[i].checks.size(); ++j) report->index.emplace_back(i, j);
    *out = report.release();
  });
}

void rdet_report_destroy(rdet_report* report) { delete report; }

rdet_status rdet_report_pass(const rdet_report* report, int* pass) {
  RDET_REQUIRE_PTR(report);
  RDET_REQUIRE_PTR(pass);
  bool all = true;
  for (const auto& r : report->reports) all = all && r.pass;
  *pass = all ? 1 : 0;
  return RDET_OK;
}

rdet_status rdet_report_json(const rdet_report* report, const char** json) {
  RDET_REQUIRE_PTR(report);
  RDET_REQUIRE_PTR(json);
  *json = report->json.c_str();
  return RDET_OK;
}

rdet_status rdet_report_check_count(const rdet_report* report, size_t* count) {
  RDET_REQUIRE_PTR(report);
  RDET_REQUIRE_PTR(count);
  *count = report->index.size();
  return RDET_OK;
}

rdet_status rdet_report_check(const rdet_report* report, size_t index, rdet_check_view* out) {
  RDET_REQUIRE_PTR(report);
  RDET_REQUIRE_PTR(out);
  if (index >= report->index.size()) return fail(RDET_ERR_DOMAIN, "check index out of range");
  const auto [i, j] = report->index[index];
  const auto& r = report->reports[i];
  const auto& c = r.checks[j];
  out->experiment = r.spec.name.c_str();
  out->kind = rdet::to_string(r.spec.kind);
  out->name = c.name.c_str();
  out->observed = c.observed;
  out->expected = c.expected;
  out->tolerance = c.tolerance;
  out->comparison = rdet::harness::to_string(c.comparison);
  out->pass = c.pass ? 1 : 0;
  out->note = c.note.c_str();
  return RDET_OK;
}

}  // extern "C"
