/*
 * (C) Copyright 2026 rdet developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include <cmath>

#include "json.hpp"
#include "rdet/harness.hpp"

namespace rdet::harness {

namespace {

using nlohmann::ordered_json;

// Non-finite reals become null; JSON has no representation for them.
ordered_json real(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

ordered_json spec_json(const ExperimentSpec& s) {
  ordered_json j;
  j["name"] = s.name;
  j["kind"] = to_string(s.kind);
  j["n"] = s.n;
  j["replicates"] = s.replicates;
  j["t_grid"] = s.t_grid;
  j["theta_grid"] = s.theta_grid;
  j["T_grid"] = s.T_grid;
  j["base_seed"] = s.base_seed;
  j["tolerances"] = ordered_json::object();
  for (const auto& [k, v] : s.tolerances) j["tolerances"][k] = v;
  j["settings"] = ordered_json::object();
  for (const auto& [k, v] : s.settings) j["settings"][k] = v;
  return j;
}

ordered_json report_json(const ExperimentReport& r) {
  ordered_json j;
  j["name"] = r.spec.name;
  j["spec"] = spec_json(r.spec);
  j["checks"] = ordered_json::array();
  for (const auto& c : r.checks) {
    ordered_json cj;
    cj["name"] = c.name;
    cj["observed"] = real(c.observed);
    cj["expected"] = real(c.expected);
    cj["tolerance"] = real(c.tolerance);
    cj["comparison"] = to_string(c.comparison);
    cj["pass"] = c.pass;
    if (!c.note.empty()) cj["note"] = c.note;
    j["checks"].push_back(std::move(cj));
  }
  j["pass"] = r.pass;
  j["seconds"] = r.seconds;
  return j;
}

}  // namespace

std::string to_json(const ExperimentReport& report, int indent) {
  return report_json(report).dump(indent);
}

std::string to_json(const std::vector<ExperimentReport>& reports, int indent) {
  ordered_json j;
  bool pass = true;
  for (const auto& r : reports) pass = pass && r.pass;
  j["pass"] = pass;
  j["base_seed"] = reports.empty() ? 0 : reports.front().spec.base_seed;
  j["reports"] = ordered_json::array();
  for (const auto& r : reports) j["reports"].push_back(report_json(r));
  return j.dump(indent);
}

}  // namespace rdet::harness
