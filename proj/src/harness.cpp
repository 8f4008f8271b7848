/*
 * (C) Copyright 2026 rdet developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "rdet/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>
#include <utility>

#include "rdet/error.hpp"
#include "rdet/rates.hpp"
#include "rdet/rng.hpp"
#include "rdet/samplers.hpp"
#include "rdet/stats.hpp"

namespace rdet::harness {

namespace {

using theory::J;

class Stopwatch {
public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

double tolerance(const ExperimentSpec& spec, const std::string& key, double fallback) {
  const auto it = spec.tolerances.find(key);
  return it == spec.tolerances.end() ? fallback : it->second;
}

double setting(const ExperimentSpec& spec, const std::string& key, double fallback) {
  const auto it = spec.settings.find(key);
  return it == spec.settings.end() ? fallback : it->second;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Base seed of the replicate streams for one (experiment, kind, n, tag) cell.
std::uint64_t cell_seed(const ExperimentSpec& spec, const std::string& tag, std::int64_t n) {
  std::uint64_t h = mix64(spec.base_seed);
  h = mix64(h ^ fnv1a(spec.name + "/" + tag));
  h = mix64(h ^ (static_cast<std::uint64_t>(spec.kind) + 1));
  return mix64(h ^ static_cast<std::uint64_t>(n));
}

int worker_count(const ExperimentSpec& spec) {
  return spec.threads > 0 ? spec.threads : default_threads();
}

// Runs fn(i) for i in [0, count); results must be written by index.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers =
      std::min<std::size_t>(count, static_cast<std::size_t>(std::max(threads, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto body = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(count);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(body);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fmt_short(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

class CsvDump {
public:
  CsvDump(const ExperimentSpec& spec, const std::string& suffix, const std::string& header) {
    if (spec.dump_dir.empty()) return;
    std::error_code ec;
    std::filesystem::create_directories(spec.dump_dir, ec);
    const auto path = std::filesystem::path(spec.dump_dir) /
                      (spec.name + "_" + to_string(spec.kind) + "_" + suffix + ".csv");
    out_.open(path);
    if (!out_) raise(ErrorCode::Io, "cannot open dump file " + path.string());
    out_ << header << '\n';
  }
  bool active() const { return out_.is_open(); }
  void row(const std::vector<std::string>& cells) {
    if (!active()) return;
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
    out_ << '\n';
    if (!out_) raise(ErrorCode::Io, "write to dump file failed");
  }

private:
  std::ofstream out_;
};

// Number of i with values[i + 1] >= values[i] (strict decrease expected).
int inversions(const std::vector<double>& values) {
  int count = 0;
  for (std::size_t i = 0; i + 1 < values.size(); ++i)
    if (!(values[i + 1] < values[i])) ++count;
  return count;
}

// Number of i with values[i + 1] > values[i] (non-increase expected).
int increases(const std::vector<double>& values) {
  int count = 0;
  for (std::size_t i = 0; i + 1 < values.size(); ++i)
    if (values[i + 1] > values[i]) ++count;
  return count;
}

std::string join(const std::vector<double>& values) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) s += (i ? " " : "") + fmt_short(values[i]);
  return s;
}

void require_kind(const ExperimentSpec& spec) {
  if (spec.kind == EnsembleKind::Radial)
    raise(ErrorCode::InvalidArgument, spec.name + " requires kind gram or wishart");
}

void require_t_grid(const ExperimentSpec& spec, double t_hi) {
  if (spec.t_grid.empty()) raise(ErrorCode::InvalidArgument, spec.name + " requires a t grid");
  for (double t : spec.t_grid)
    if (!(t > 0.0 && t <= t_hi))
      raise(ErrorCode::InvalidArgument,
            spec.name + " requires t_grid within (0, " + fmt_short(t_hi) + "]");
}

std::int64_t step_index(std::int64_t n, double t) {
  return static_cast<std::int64_t>(std::floor(static_cast<double>(n) * t + 1e-9));
}

ExperimentReport finish(const ExperimentSpec& spec, std::vector<CheckRecord> checks,
                        const Stopwatch& clock) {
  ExperimentReport report;
  report.spec = spec;
  report.checks = std::move(checks);
  report.pass = std::all_of(report.checks.begin(), report.checks.end(),
                            [](const CheckRecord& c) { return c.pass; });
  report.seconds = clock.seconds();
  return report;
}

}  // namespace

const char* to_string(Comparison comparison) noexcept {
  switch (comparison) {
    case Comparison::AbsDiffLe: return "abs_diff_le";
    case Comparison::Le: return "le";
    case Comparison::Ge: return "ge";
  }
  return "unknown";
}

CheckRecord check_close(std::string name, double observed, double expected, double tol,
                        std::string note) {
  const bool pass = std::isfinite(observed) && std::abs(observed - expected) <= tol;
  return {std::move(name), observed, expected, tol, Comparison::AbsDiffLe, pass, std::move(note)};
}

CheckRecord check_at_most(std::string name, double observed, double bound, std::string note) {
  return {std::move(name), observed, bound, 0.0, Comparison::Le, observed <= bound,
          std::move(note)};
}

CheckRecord check_at_least(std::string name, double observed, double bound, std::string note) {
  return {std::move(name), observed, bound, 0.0, Comparison::Ge, observed >= bound,
          std::move(note)};
}

int default_threads() {
  if (const char* env = std::getenv("RDET_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(std::min(v, 256L));
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void validate(const ExperimentSpec& spec) {
  if (spec.replicates < 1) raise(ErrorCode::InvalidArgument, "replicates must be >= 1");
  if (!std::is_sorted(spec.t_grid.begin(), spec.t_grid.end()))
    raise(ErrorCode::InvalidArgument, "t_grid must be sorted");
  for (double t : spec.t_grid)
    if (!(t >= 0.0 && t < 1.0)) raise(ErrorCode::InvalidArgument, "t_grid must lie in [0, 1)");
  for (const auto& [key, value] : spec.tolerances)
    if (!(value > 0.0)) raise(ErrorCode::InvalidArgument, "tolerance " + key + " must be > 0");
  for (auto n : spec.n)
    if (n < 2) raise(ErrorCode::InvalidArgument, "every n must be >= 2");
}

ExperimentReport run_lln(const ExperimentSpec& spec) {
  const Stopwatch clock;
  validate(spec);
  require_kind(spec);
  if (spec.n.empty()) raise(ErrorCode::InvalidArgument, "lln requires at least one n");
  const double tol = tolerance(spec, "sup", 0.1);
  const double min_fraction = setting(spec, "min_pass_fraction", 0.95);
  const int allowed = static_cast<int>(setting(spec, "allowed_inversions", 0.0));
  const auto reps = static_cast<std::size_t>(spec.replicates);

  std::vector<CheckRecord> checks;
  std::vector<double> medians;
  for (auto n : spec.n) {
    const std::uint64_t seed = cell_seed(spec, "paths", n);
    std::vector<double> sups(reps);
    parallel_for(reps, worker_count(spec), [&](std::size_t rep) {
      RngStream stream = derive_stream(seed, rep);
      const auto path = sample_path(spec.kind, n, stream);
      const double nd = static_cast<double>(n);
      double sup = 0.0;
      for (std::int64_t r = 0; r <= n; ++r) {
        const double dev =
            std::abs(path.values[static_cast<std::size_t>(r)] / nd + J(1.0 - static_cast<double>(r) / nd));
        sup = std::max(sup, dev);
      }
      sups[rep] = sup;
    });
    CsvDump dump(spec, "n" + std::to_string(n), "replicate,sup");
    for (std::size_t rep = 0; rep < reps; ++rep) dump.row({std::to_string(rep), fmt(sups[rep])});
    const double fraction =
        static_cast<double>(std::count_if(sups.begin(), sups.end(), [&](double s) { return s <= tol; })) /
        static_cast<double>(reps);
    const double med = stats::median(sups);
    medians.push_back(med);
    checks.push_back(check_at_least("pass_fraction n=" + std::to_string(n), fraction, min_fraction,
                                    "fraction of replicates with sup <= " + fmt_short(tol) +
                                        "; median sup " + fmt_short(med)));
  }
  if (spec.n.size() > 1)
    checks.push_back(check_at_most("median_sup_nonincreasing", increases(medians), allowed,
                                   "medians " + join(medians)));
  return finish(spec, std::move(checks), clock);
}

ExperimentReport run_clt(const ExperimentSpec& spec) {
  const Stopwatch clock;
  validate(spec);
  require_kind(spec);
  require_t_grid(spec, 0.9);
  if (spec.n.empty()) raise(ErrorCode::InvalidArgument, "clt requires n");
  const std::int64_t n = spec.n.front();
  const double mean_sigmas = tolerance(spec, "mean_sigmas", 3.0);
  const double var_rel = tolerance(spec, "variance_rel", 0.10);
  const double ks_p = tolerance(spec, "ks_p", 1e-3);
  const double cov_sigmas = tolerance(spec, "cov_sigmas", 3.0);
  const auto reps = static_cast<std::size_t>(spec.replicates);
  const std::size_t nt = spec.t_grid.size();

  std::vector<std::int64_t> steps(nt);
  for (std::size_t k = 0; k < nt; ++k) steps[k] = step_index(n, spec.t_grid[k]);
  const std::int64_t r_max = steps.back();
  const double nd = static_cast<double>(n);

  // eta[k][rep]
  std::vector<std::vector<double>> eta(nt, std::vector<double>(reps));
  const std::uint64_t seed = cell_seed(spec, "paths", n);
  parallel_for(reps, worker_count(spec), [&](std::size_t rep) {
    RngStream stream = derive_stream(seed, rep);
    const auto path = sample_path_prefix(spec.kind, n, r_max, stream);
    for (std::size_t k = 0; k < nt; ++k) {
      const std::int64_t r = steps[k];
      eta[k][rep] = path.values[static_cast<std::size_t>(r)] + nd * J(1.0 - static_cast<double>(r) / nd);
    }
  });
  CsvDump dump(spec, "n" + std::to_string(n), "replicate,t,eta");
  for (std::size_t rep = 0; rep < reps && dump.active(); ++rep)
    for (std::size_t k = 0; k < nt; ++k) dump.row({std::to_string(rep), fmt(spec.t_grid[k]), fmt(eta[k][rep])});

  std::vector<CheckRecord> checks;
  for (std::size_t k = 0; k < nt; ++k) {
    const double t = spec.t_grid[k];
    const std::int64_t r = steps[k];
    const auto curve = theory::clt_curves(spec.kind, t);
    const double exact = (r == 0 ? 0.0 : theory::exact_mean(spec.kind, n, r)) +
                         nd * J(1.0 - static_cast<double>(r) / nd);
    const double m = stats::mean(eta[k]);
    const double v = stats::variance(eta[k]);
    const std::string at = " t=" + fmt_short(t);
    checks.push_back(check_close("mean" + at, m, exact,
                                 mean_sigmas * std::sqrt(curve.variance / static_cast<double>(reps)),
                                 "exact finite-n mean; limit drift " + fmt_short(curve.drift)));
    checks.push_back(check_close("variance" + at, v, curve.variance, var_rel * curve.variance));
    const double sd = std::sqrt(curve.variance);
    const auto ks = stats::ks_one_sample(eta[k], [&](double x) { return stats::normal_cdf(x, exact, sd); });
    checks.push_back(check_at_least("ks_normal" + at, ks.p_value, ks_p,
                                    "statistic " + fmt_short(ks.statistic)));
  }
  if (nt >= 2) {
    std::vector<double> increment(reps);
    for (std::size_t rep = 0; rep < reps; ++rep) increment[rep] = eta[1][rep] - eta[0][rep];
    const double c = stats::covariance(eta[0], increment);
    const double se = std::sqrt(stats::variance(eta[0]) * stats::variance(increment) /
                                static_cast<double>(reps));
    checks.push_back(check_close("increment_covariance t=" + fmt_short(spec.t_grid[0]) + "," +
                                     fmt_short(spec.t_grid[1]),
                                 c, 0.0, cov_sigmas * se));
  }
  return finish(spec, std::move(checks), clock);
}

ExperimentReport run_endpoint(const ExperimentSpec& spec) {
  const Stopwatch clock;
  validate(spec);
  require_kind(spec);
  if (spec.n.empty()) raise(ErrorCode::InvalidArgument, "endpoint requires an exact-moment n list");
  const double gap_tol = tolerance(spec, "gap", 5e-3);
  const double ks_p = tolerance(spec, "ks_p", 1e-3);
  const double mean_sigmas = tolerance(spec, "mean_sigmas", 4.0);
  const auto constants = theory::endpoint_constants(spec.kind);

  std::vector<CheckRecord> checks;
  std::vector<double> mean_values, var_values, mean_gaps, var_gaps;
  for (auto n : spec.n) {
    const auto mom = theory::variance_report(spec.kind, n, n);
    const double nd = static_cast<double>(n);
    const double mv = mom.mean + nd + 0.5 * std::log(nd);
    const double vv = mom.variance - 2.0 * std::log(nd);
    mean_values.push_back(mv);
    var_values.push_back(vv);
    mean_gaps.push_back(std::abs(mv - constants.mean_const));
    var_gaps.push_back(std::abs(vv - constants.var_const));
  }
  const std::string last = " n=" + std::to_string(spec.n.back());
  checks.push_back(check_close("mean_constant" + last, mean_values.back(), constants.mean_const, gap_tol,
                               "values " + join(mean_values)));
  checks.push_back(check_at_most("mean_gap_decreasing", inversions(mean_gaps), 0.0,
                                 "gaps " + join(mean_gaps)));
  checks.push_back(check_close("variance_constant" + last, var_values.back(), constants.var_const,
                               gap_tol, "values " + join(var_values)));
  checks.push_back(check_at_most("variance_gap_decreasing", inversions(var_gaps), 0.0,
                                 "gaps " + join(var_gaps)));

  const auto n = static_cast<std::int64_t>(setting(spec, "sample_n", 2000.0));
  if (n < 2) raise(ErrorCode::InvalidArgument, "sample_n must be >= 2");
  const auto reps = static_cast<std::size_t>(spec.replicates);
  const auto mom = theory::variance_report(spec.kind, n, n);
  const double sd = std::sqrt(mom.variance);
  std::vector<double> z(reps);
  const std::uint64_t seed = cell_seed(spec, "endpoint", n);
  parallel_for(reps, worker_count(spec), [&](std::size_t rep) {
    RngStream stream = derive_stream(seed, rep);
    const auto path = sample_path(spec.kind, n, stream);
    z[rep] = (path.values.back() - mom.mean) / sd;
  });
  CsvDump dump(spec, "n" + std::to_string(n), "replicate,standardized");
  for (std::size_t rep = 0; rep < reps; ++rep) dump.row({std::to_string(rep), fmt(z[rep])});
  const std::string at = " n=" + std::to_string(n);
  checks.push_back(check_close("standardized_mean" + at, stats::mean(z), 0.0,
                               mean_sigmas / std::sqrt(static_cast<double>(reps))));
  const auto ks = stats::ks_one_sample(z, [](double x) { return stats::normal_cdf(x); });
  checks.push_back(check_at_least("ks_standard_normal" + at, ks.p_value, ks_p,
                                  "statistic " + fmt_short(ks.statistic)));
  return finish(spec, std::move(checks), clock);
}

ExperimentReport run_sde_match(const ExperimentSpec& spec) {
  const Stopwatch clock;
  validate(spec);
  require_kind(spec);
  require_t_grid(spec, 0.9);
  if (spec.n.empty()) raise(ErrorCode::InvalidArgument, "sde requires n");
  const std::int64_t n = spec.n.front();
  const double mean_rel = tolerance(spec, "mean_rel", 0.10);
  const double var_rel = tolerance(spec, "variance_rel", 0.10);
  const double ks_p = tolerance(spec, "ks_p", 1e-3);
  const double drift_tol = tolerance(spec, "drift", 1e-3);
  const double dt = setting(spec, "sde_dt", 5e-4);
  const auto sde_reps = static_cast<std::size_t>(setting(spec, "sde_replicates", spec.replicates));
  const int drift_steps = static_cast<int>(setting(spec, "drift_steps", 1e4));
  const auto reps = static_cast<std::size_t>(spec.replicates);
  const std::size_t nt = spec.t_grid.size();
  const double t_max = spec.t_grid.back();
  const int steps = std::max(100, static_cast<int>(std::lround(t_max / dt)));
  const double h = t_max / steps;
  const double nd = static_cast<double>(n);

  std::vector<std::int64_t> r_index(nt);
  std::vector<std::size_t> sde_index(nt);
  for (std::size_t k = 0; k < nt; ++k) {
    r_index[k] = step_index(n, spec.t_grid[k]);
    sde_index[k] = static_cast<std::size_t>(std::lround(spec.t_grid[k] / h));
  }

  std::vector<std::vector<double>> eta(nt, std::vector<double>(reps));
  const std::uint64_t seed_eta = cell_seed(spec, "paths", n);
  parallel_for(reps, worker_count(spec), [&](std::size_t rep) {
    RngStream stream = derive_stream(seed_eta, rep);
    const auto path = sample_path_prefix(spec.kind, n, r_index.back(), stream);
    for (std::size_t k = 0; k < nt; ++k) {
      const std::int64_t r = r_index[k];
      eta[k][rep] = path.values[static_cast<std::size_t>(r)] + nd * J(1.0 - static_cast<double>(r) / nd);
    }
  });
  std::vector<std::vector<double>> sde(nt, std::vector<double>(sde_reps));
  const std::uint64_t seed_sde = cell_seed(spec, "sde", steps);
  parallel_for(sde_reps, worker_count(spec), [&](std::size_t rep) {
    RngStream stream = derive_stream(seed_sde, rep);
    const auto path = sample_sde_path(spec.kind, t_max, steps, stream);
    for (std::size_t k = 0; k < nt; ++k) sde[k][rep] = path.values[sde_index[k]];
  });
  CsvDump dump(spec, "n" + std::to_string(n), "source,replicate,t,value");
  if (dump.active()) {
    for (std::size_t k = 0; k < nt; ++k) {
      for (std::size_t rep = 0; rep < reps; ++rep)
        dump.row({"eta", std::to_string(rep), fmt(spec.t_grid[k]), fmt(eta[k][rep])});
      for (std::size_t rep = 0; rep < sde_reps; ++rep)
        dump.row({"sde", std::to_string(rep), fmt(spec.t_grid[k]), fmt(sde[k][rep])});
    }
  }

  std::vector<CheckRecord> checks;
  for (std::size_t k = 0; k < nt; ++k) {
    const std::string at = " t=" + fmt_short(spec.t_grid[k]);
    const double me = stats::mean(eta[k]);
    const double ms = stats::mean(sde[k]);
    const double ve = stats::variance(eta[k]);
    const double vs = stats::variance(sde[k]);
    const auto curve = theory::clt_curves(spec.kind, spec.t_grid[k]);
    checks.push_back(check_close("mean" + at, ms, me, mean_rel * std::abs(me),
                                 "sde vs triangular array; limit " + fmt_short(curve.drift)));
    checks.push_back(check_close("variance" + at, vs, ve, var_rel * ve,
                                 "sde vs triangular array; limit " + fmt_short(curve.variance)));
    const auto ks = stats::ks_two_sample(eta[k], sde[k]);
    checks.push_back(check_at_least("ks_two_sample" + at, ks.p_value, ks_p,
                                    "statistic " + fmt_short(ks.statistic)));
  }
  RngStream unused(spec.base_seed);
  const auto ode = sample_sde_path(spec.kind, t_max, drift_steps, unused, false);
  double worst = 0.0;
  for (std::size_t i = 0; i < ode.t.size(); ++i)
    worst = std::max(worst, std::abs(ode.values[i] - theory::clt_curves(spec.kind, ode.t[i]).drift));
  checks.push_back(check_at_most("zero_noise_drift", worst, drift_tol,
                                 "max deviation from the drift curve over " +
                                     std::to_string(drift_steps) + " steps"));
  return finish(spec, std::move(checks), clock);
}

ExperimentReport run_cgf_convergence(const ExperimentSpec& spec) {
  const Stopwatch clock;
  validate(spec);
  require_kind(spec);
  if (spec.n.empty() || spec.T_grid.empty() || spec.theta_grid.empty())
    raise(ErrorCode::InvalidArgument, "cgf requires n, T and theta grids");
  const double gap_tol = tolerance(spec, "gap", 5e-3);
  const double zero_tol = tolerance(spec, "zero", 1e-14);
  const double add_tol = tolerance(spec, "additivity", 1e-12);

  std::vector<CheckRecord> checks;
  for (double T : spec.T_grid) {
    for (double theta : spec.theta_grid) {
      const std::string at = " T=" + fmt_short(T) + " theta=" + fmt_short(theta);
      try {
        const double limit = rates::L_T(spec.kind, T, theta);
        std::vector<double> values, gaps;
        for (auto n : spec.n) {
          values.push_back(theory::finite_n_ncgf(spec.kind, n, T, theta));
          gaps.push_back(std::abs(values.back() - limit));
        }
        if (theta == 0.0) {
          double worst = std::abs(limit);
          for (double v : values) worst = std::max(worst, std::abs(v));
          checks.push_back(check_close("zero_at_origin" + at, worst, 0.0, zero_tol));
        } else {
          checks.push_back(check_at_most("gap_decreasing" + at, inversions(gaps), 0.0,
                                         "gaps " + join(gaps)));
          checks.push_back(check_close("final_gap" + at, values.back(), limit, gap_tol,
                                       "n=" + std::to_string(spec.n.back())));
        }
        if (spec.kind == EnsembleKind::Wishart) {
          double worst = std::abs(limit - rates::L_T(EnsembleKind::Gram, T, theta) -
                                  rates::L_T(EnsembleKind::Radial, T, theta));
          for (std::size_t i = 0; i < spec.n.size(); ++i) {
            const auto n = spec.n[i];
            worst = std::max(worst, std::abs(values[i] -
                                             theory::finite_n_ncgf(EnsembleKind::Gram, n, T, theta) -
                                             theory::finite_n_ncgf(EnsembleKind::Radial, n, T, theta)));
          }
          checks.push_back(check_close("additivity" + at, worst, 0.0, add_tol,
                                       "wishart minus gram minus radial"));
        }
      } catch (const Error& e) {
        CheckRecord failed = check_close("domain" + at, std::numeric_limits<double>::quiet_NaN(), 0.0,
                                         gap_tol, std::string(to_string(e.code())) + ": " + e.what());
        checks.push_back(std::move(failed));
      }
    }
  }
  return finish(spec, std::move(checks), clock);
}

ExperimentReport run_rate_consistency(const ExperimentSpec& spec) {
  const Stopwatch clock;
  validate(spec);
  require_kind(spec);
  if (spec.T_grid.empty() || spec.theta_grid.empty())
    raise(ErrorCode::InvalidArgument, "rates requires T and theta grids");
  const double dual_tol = tolerance(spec, "duality", 1e-6);
  const double path_tol = tolerance(spec, "path_rate", 1e-6);
  const double slope_tol = tolerance(spec, "slope", 1e-9);
  const double cont_tol = tolerance(spec, "continuity", 1e-6);
  const double convex_tol = tolerance(spec, "convexity", 1e-9);
  const double trip_tol = tolerance(spec, "round_trip", 1e-9);
  const double spectral_tol = tolerance(spec, "spectral", 1e-8);
  const double infconv_tol = tolerance(spec, "inf_convolution", 1e-6);
  const EnsembleKind kind = spec.kind;

  std::vector<CheckRecord> checks;
  for (double T : spec.T_grid) {
    const std::string at = " T=" + fmt_short(T);
    if (!(T > 0.0 && T < 1.0)) {
      checks.push_back(check_close("domain" + at, std::numeric_limits<double>::quiet_NaN(), 0.0,
                                   dual_tol, "T must lie in (0, 1)"));
      continue;
    }
    const double junction = rates::affine_junction(kind, T);
    const double lln = theory::lln_limit(T);
    const double span = kind == EnsembleKind::Gram ? 0.9 * T : 1.8;

    // Legendre duality on a grid through the affine tail, the zero and both sides.
    double dual_gap = 0.0;
    std::vector<double> xs, is;
    for (int i = -8; i <= 24; ++i) {
      const double xi = junction + span * i / 24.0;
      const auto r = rates::marginal_rate(kind, T, xi);
      const auto s = rates::legendre_sup(kind, T, xi);
      dual_gap = std::max(dual_gap, std::abs(r.value - s.value));
      xs.push_back(xi);
      is.push_back(r.value);
    }
    checks.push_back(check_close("legendre_duality" + at, dual_gap, 0.0, dual_tol,
                                 "max gap over " + std::to_string(xs.size()) + " points"));

    double min_second = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i + 1 < is.size(); ++i)
      min_second = std::min(min_second, is[i - 1] - 2.0 * is[i] + is[i + 1]);
    checks.push_back(check_at_least("convexity" + at, min_second, -convex_tol,
                                    "minimum second difference on a uniform grid"));

    const double eps = 1e-7;
    const double left = rates::marginal_rate(kind, T, junction - eps).value;
    const double right = rates::marginal_rate(kind, T, junction + eps).value;
    checks.push_back(check_close("affine_continuity" + at, left, right, cont_tol));
    const double far = rates::marginal_rate(kind, T, junction - 2.0).value;
    const double near = rates::marginal_rate(kind, T, junction - 1.0).value;
    checks.push_back(check_close("affine_slope" + at, (near - far) / 1.0, rates::theta_lower(kind, T),
                                 slope_tol, "expected -(1-T)/2"));
    checks.push_back(check_close("zero_at_lln" + at, rates::marginal_rate(kind, T, lln).value, 0.0,
                                 1e-12));

    for (double theta : spec.theta_grid) {
      const std::string pt = at + " theta=" + fmt_short(theta);
      if (!(theta > rates::theta_lower(kind, T))) {
        checks.push_back(check_close("domain" + pt, std::numeric_limits<double>::quiet_NaN(), 0.0,
                                     path_tol, "theta outside the cgf domain"));
        continue;
      }
      const double xi = rates::phi(kind, T, theta);
      const auto r = rates::marginal_rate(kind, T, xi);
      const auto path = rates::optimal_path(kind, T, theta);
      checks.push_back(check_close("optimal_path_endpoint" + pt, path.value.back(), xi, trip_tol));
      checks.push_back(check_close("theta_round_trip" + pt, r.theta.value_or(std::nan("")), theta,
                                   trip_tol));
      const double pr = rates::path_rate(
          kind, [&](double t) { return rates::optimal_path_derivative(kind, t, theta); }, {}, T);
      checks.push_back(check_close("optimal_path_rate" + pt, pr, r.value, path_tol));
      if (kind == EnsembleKind::Wishart) {
        const double sp = rates::spectral_rate_mp(T, 1.0 + 2.0 * theta);
        checks.push_back(check_close("spectral_identity" + pt, sp, r.value, spectral_tol,
                                     "rate at the Marchenko-Pastur law with scale 1+2 theta"));
      }
    }
  }
  if (kind == EnsembleKind::Wishart) {
    for (double t : spec.T_grid) {
      for (double u : {-3.0, -1.0, -0.2, 0.0, 0.3, 1.5}) {
        const auto ic = rates::inf_convolution_check(t, u);
        checks.push_back(check_close("inf_convolution t=" + fmt_short(t) + " u=" + fmt_short(u),
                                     ic.numeric, ic.closed_form, infconv_tol));
      }
    }
  }
  return finish(spec, std::move(checks), clock);
}

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{"lln", "clt", "endpoint", "sde", "cgf", "rates"};
  return names;
}

std::vector<ExperimentSpec> default_specs(const std::string& name, bool heavy) {
  std::vector<ExperimentSpec> specs;
  for (auto kind : {EnsembleKind::Gram, EnsembleKind::Wishart}) {
    ExperimentSpec s;
    s.name = name;
    s.kind = kind;
    if (name == "lln") {
      s.n = {200, 400, 800};
      s.replicates = 50;
      s.tolerances = {{"sup", 0.1}};
      s.settings = {{"min_pass_fraction", 0.95}, {"allowed_inversions", 0.0}};
    } else if (name == "clt") {
      s.n = {2000};
      s.replicates = 2000;
      s.t_grid = {0.25, 0.5, 0.75};
      s.tolerances = {{"mean_sigmas", 3.0}, {"variance_rel", 0.10}, {"ks_p", 1e-3}, {"cov_sigmas", 3.0}};
    } else if (name == "endpoint") {
      s.n = heavy ? std::vector<std::int64_t>{10000, 100000, 1000000}
                  : std::vector<std::int64_t>{1000, 10000, 100000};
      s.replicates = 5000;
      s.tolerances = {{"gap", 5e-3}, {"ks_p", 1e-3}, {"mean_sigmas", 4.0}};
      s.settings = {{"sample_n", 2000.0}};
    } else if (name == "sde") {
      s.n = {2000};
      s.replicates = 60000;
      s.t_grid = {0.5};
      s.tolerances = {{"mean_rel", 0.10}, {"variance_rel", 0.10}, {"ks_p", 1e-3}, {"drift", 1e-3}};
      s.settings = {{"sde_dt", 5e-4}, {"sde_replicates", 60000.0}, {"drift_steps", 1e4}};
    } else if (name == "cgf") {
      s.n = {1000, 10000};
      s.T_grid = {0.25, 0.5, 0.75};
      s.theta_grid = {-0.1, 0.0, 0.5, 1.0};
      s.tolerances = {{"gap", 5e-3}, {"zero", 1e-14}, {"additivity", 1e-12}};
    } else if (name == "rates") {
      s.T_grid = {0.25, 0.5};
      s.theta_grid = {-0.2, 0.3, 1.0};
      s.tolerances = {{"duality", 1e-6},   {"path_rate", 1e-6}, {"slope", 1e-9},
                      {"continuity", 1e-6}, {"convexity", 1e-9}, {"round_trip", 1e-9},
                      {"spectral", 1e-8},  {"inf_convolution", 1e-6}};
    } else {
      raise(ErrorCode::InvalidArgument, "unknown experiment '" + name + "'");
    }
    specs.push_back(std::move(s));
  }
  return specs;
}

ExperimentReport run(const ExperimentSpec& spec) {
  if (spec.name == "lln") return run_lln(spec);
  if (spec.name == "clt") return run_clt(spec);
  if (spec.name == "endpoint") return run_endpoint(spec);
  if (spec.name == "sde") return run_sde_match(spec);
  if (spec.name == "cgf") return run_cgf_convergence(spec);
  if (spec.name == "rates") return run_rate_consistency(spec);
  raise(ErrorCode::InvalidArgument, "unknown experiment '" + spec.name + "'");
}

}  // namespace rdet::harness
