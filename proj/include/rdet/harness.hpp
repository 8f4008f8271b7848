/*
 * (C) Copyright 2026 rdet developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

// Named, reproducible experiments checking the limit theorems at desk scale.
// Every experiment is a pure function of its spec: replicate r of a given
// (experiment, kind, n) draws from a stream derived from (base_seed, r), and
// per-replicate results are stored by index before aggregation, so serial and
// threaded runs give identical reports.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rdet/theory.hpp"

namespace rdet::harness {

struct ExperimentSpec {
  std::string name;
  EnsembleKind kind = EnsembleKind::Gram;
  std::vector<std::int64_t> n;
  int replicates = 1;
  std::vector<double> t_grid;
  std::vector<double> theta_grid;
  std::vector<double> T_grid;
  std::uint64_t base_seed = 42;
  std::map<std::string, double> tolerances;
  std::map<std::string, double> settings;
  /// Directory for per-sample CSV dumps; empty disables dumping.
  std::string dump_dir;
  /// Worker count; 0 means RDET_THREADS or the hardware concurrency.
  /// Not part of the report: results do not depend on it.
  int threads = 0;
};

/// Raises InvalidArgument unless replicates >= 1, t_grid is sorted and every
/// tolerance is positive.
void validate(const ExperimentSpec& spec);

enum class Comparison {
  AbsDiffLe,  ///< |observed - expected| <= tolerance
  Le,         ///< observed <= expected
  Ge,         ///< observed >= expected
};

const char* to_string(Comparison comparison) noexcept;

struct CheckRecord {
  std::string name;
  double observed = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  Comparison comparison = Comparison::AbsDiffLe;
  bool pass = false;
  std::string note;
};

CheckRecord check_close(std::string name, double observed, double expected, double tolerance,
                        std::string note = {});
CheckRecord check_at_most(std::string name, double observed, double bound, std::string note = {});
CheckRecord check_at_least(std::string name, double observed, double bound,
                           std::string note = {});

struct ExperimentReport {
  ExperimentSpec spec;
  std::vector<CheckRecord> checks;
  bool pass = false;
  double seconds = 0.0;
};

ExperimentReport run_lln(const ExperimentSpec& spec);
ExperimentReport run_clt(const ExperimentSpec& spec);
ExperimentReport run_endpoint(const ExperimentSpec& spec);
ExperimentReport run_sde_match(const ExperimentSpec& spec);
ExperimentReport run_cgf_convergence(const ExperimentSpec& spec);
ExperimentReport run_rate_consistency(const ExperimentSpec& spec);

/// Registered experiment names, in run order.
const std::vector<std::string>& experiment_names();

/// Default specs for a registered name (one per ensemble kind); heavy
/// selects the larger exact-moment grids. Unknown names raise InvalidArgument.
std::vector<ExperimentSpec> default_specs(const std::string& name, bool heavy = false);

/// Dispatches on spec.name.
ExperimentReport run(const ExperimentSpec& spec);

/// JSON text of a report: {name, spec, checks[], pass, seconds}.
std::string to_json(const ExperimentReport& report, int indent = 2);

/// JSON text of a batch: {pass, base_seed, reports[]}.
std::string to_json(const std::vector<ExperimentReport>& reports, int indent = 2);

/// Worker count used when spec.threads == 0.
int default_threads();

}  // namespace rdet::harness
