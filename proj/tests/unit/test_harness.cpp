/*
 * (C) Copyright 2026 rdet developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <string>

#include "json.hpp"
#include "rdet/harness.hpp"
#include "test_util.hpp"

using namespace rdet;
using namespace rdet::harness;
using rdet::test::code;
using rdet::test::error_code_of;

namespace {

ExperimentSpec small(const std::string& name, EnsembleKind kind) {
  auto spec = default_specs(name).at(kind == EnsembleKind::Gram ? 0 : 1);
  if (name == "clt") {
    spec.n = {300};
    spec.replicates = 200;
  } else if (name == "lln") {
    spec.n = {50, 100};
    spec.replicates = 20;
  } else if (name == "endpoint") {
    spec.n = {100, 1000};
    spec.replicates = 200;
    spec.settings["sample_n"] = 200;
  } else if (name == "sde") {
    spec.n = {200};
    spec.replicates = 300;
    spec.settings["sde_replicates"] = 300;
    spec.settings["drift_steps"] = 1000;
  }
  return spec;
}

// Report JSON without the wall time.
std::string stable_json(const ExperimentReport& r) {
  auto j = nlohmann::json::parse(to_json(r));
  j.erase("seconds");
  return j.dump();
}

}  // namespace

TEST_CASE("registry") {
  CHECK(experiment_names() ==
        std::vector<std::string>{"lln", "clt", "endpoint", "sde", "cgf", "rates"});
  for (const auto& name : experiment_names()) {
    const auto specs = default_specs(name);
    REQUIRE(specs.size() == 2);
    CHECK(specs[0].kind == EnsembleKind::Gram);
    CHECK(specs[1].kind == EnsembleKind::Wishart);
    for (const auto& s : specs) {
      CHECK(s.name == name);
      CHECK(s.base_seed == 42);
      for (const auto& [k, v] : s.tolerances) CHECK(v > 0.0);
    }
  }
  CHECK(default_specs("endpoint", true)[0].n.back() == 1000000);
  CHECK(default_specs("endpoint", false)[0].n.back() == 100000);
  CHECK(error_code_of([] { default_specs("nope"); }) == code(ErrorCode::InvalidArgument));
  ExperimentSpec bogus;
  bogus.name = "nope";
  CHECK(error_code_of([&] { run(bogus); }) == code(ErrorCode::InvalidArgument));
}

TEST_CASE("experiment validation") {
  auto s = small("clt", EnsembleKind::Gram);
  s.replicates = 0;
  CHECK(error_code_of([&] { run(s); }) == code(ErrorCode::InvalidArgument));
  s = small("clt", EnsembleKind::Gram);
  s.t_grid = {0.5, 0.25};
  CHECK(error_code_of([&] { run(s); }) == code(ErrorCode::InvalidArgument));
  s = small("clt", EnsembleKind::Gram);
  s.tolerances["ks_p"] = 0.0;
  CHECK(error_code_of([&] { run(s); }) == code(ErrorCode::InvalidArgument));
  s = small("clt", EnsembleKind::Gram);
  s.t_grid = {0.5, 0.95};
  CHECK(error_code_of([&] { run(s); }) == code(ErrorCode::InvalidArgument));
  s = small("lln", EnsembleKind::Gram);
  s.kind = EnsembleKind::Radial;
  CHECK(error_code_of([&] { run(s); }) == code(ErrorCode::InvalidArgument));
}

TEST_CASE("check helpers") {
  CHECK(check_close("a", 1.0, 1.05, 0.1).pass);
  CHECK_FALSE(check_close("a", 1.0, 1.2, 0.1).pass);
  CHECK_FALSE(check_close("a", std::nan(""), 0.0, 1.0).pass);
  CHECK(check_at_most("b", 1.0, 1.0).pass);
  CHECK_FALSE(check_at_most("b", 1.5, 1.0).pass);
  CHECK(check_at_least("c", 0.2, 0.001).pass);
  CHECK_FALSE(check_at_least("c", 1e-4, 0.001).pass);
}

TEST_CASE("aggregate pass is the conjunction of checks") {
  for (const auto& name : experiment_names()) {
    for (auto kind : {EnsembleKind::Gram, EnsembleKind::Wishart}) {
      const auto r = run(small(name, kind));
      bool all = true;
      for (const auto& c : r.checks) all = all && c.pass;
      CHECK(r.pass == all);
      CHECK(r.seconds >= 0.0);
    }
  }
}

TEST_CASE("check counts follow the grids") {
  auto clt = small("clt", EnsembleKind::Gram);
  CHECK(run(clt).checks.size() == 3 * 3 + 1);
  clt.t_grid = {0.5};
  CHECK(run(clt).checks.size() == 3);
  auto lln = small("lln", EnsembleKind::Wishart);
  CHECK(run(lln).checks.size() == lln.n.size() + 1);
  CHECK(run(small("endpoint", EnsembleKind::Gram)).checks.size() == 6);
  CHECK(run(small("sde", EnsembleKind::Gram)).checks.size() == 4);
  const auto cg = default_specs("cgf")[0];
  // Two checks per nonzero theta, one at theta = 0.
  CHECK(run(cg).checks.size() == cg.T_grid.size() * (2 * 3 + 1));
  const auto cw = default_specs("cgf")[1];
  CHECK(run(cw).checks.size() == cw.T_grid.size() * (2 * 3 + 1 + 4));
  const auto rg = default_specs("rates")[0];
  CHECK(run(rg).checks.size() == rg.T_grid.size() * (5 + 3 * 3));
  const auto rw = default_specs("rates")[1];
  CHECK(run(rw).checks.size() == rw.T_grid.size() * (5 + 3 * 4 + 6));
}

TEST_CASE("domain failures are reported, not dropped") {
  auto spec = default_specs("cgf")[0];
  spec.T_grid = {0.5};
  spec.theta_grid = {-0.4, 0.5};
  const auto r = run(spec);
  REQUIRE(r.checks.size() == 3);
  CHECK(r.checks[0].name.rfind("domain", 0) == 0);
  CHECK_FALSE(r.checks[0].pass);
  CHECK_FALSE(r.pass);
  auto rs = default_specs("rates")[0];
  rs.T_grid = {0.75};
  rs.theta_grid = {-0.2};
  const auto rr = run(rs);
  CHECK_FALSE(rr.pass);
  CHECK(rr.checks.back().name.rfind("domain", 0) == 0);
}

TEST_CASE("reports are pure functions of the experiment and seed") {
  for (const auto& name : {"lln", "clt", "endpoint", "sde"}) {
    auto spec = small(name, EnsembleKind::Wishart);
    spec.threads = 1;
    const auto serial = stable_json(run(spec));
    CHECK(serial == stable_json(run(spec)));
    spec.threads = 4;
    CHECK(serial == stable_json(run(spec)));
    spec.base_seed = 43;
    CHECK(serial != stable_json(run(spec)));
  }
}

TEST_CASE("json layout") {
  const auto r = run(small("clt", EnsembleKind::Gram));
  const auto j = nlohmann::json::parse(to_json(r));
  CHECK(j["name"] == "clt");
  CHECK(j["spec"]["kind"] == "gram");
  CHECK(j["spec"]["base_seed"] == 42);
  CHECK(j["spec"]["n"][0] == 300);
  CHECK(j["checks"].size() == r.checks.size());
  CHECK(j["checks"][0].contains("observed"));
  CHECK(j["checks"][0]["comparison"] == "abs_diff_le");
  CHECK(j["pass"] == r.pass);
  CHECK(j["seconds"].is_number());
  const auto batch = nlohmann::json::parse(to_json(std::vector<ExperimentReport>{r, r}));
  CHECK(batch["reports"].size() == 2);
  CHECK(batch["pass"] == r.pass);
  ExperimentReport failing = r;
  failing.pass = false;
  failing.checks.push_back(check_close("nan", std::nan(""), 0.0, 1.0));
  const auto mixed = nlohmann::json::parse(to_json(std::vector<ExperimentReport>{r, failing}));
  CHECK(mixed["pass"] == false);
  CHECK(mixed["reports"][1]["checks"].back()["observed"].is_null());
}

TEST_CASE("sample dumps") {
  const auto dir = std::filesystem::temp_directory_path() / "rdet_harness_dump_test";
  std::filesystem::remove_all(dir);
  auto spec = small("lln", EnsembleKind::Gram);
  spec.dump_dir = dir.string();
  run(spec);
  for (auto n : spec.n) {
    std::ifstream in(dir / ("lln_gram_n" + std::to_string(n) + ".csv"));
    REQUIRE(in);
    std::string line;
    int rows = 0;
    std::getline(in, line);
    CHECK(line == "replicate,sup");
    while (std::getline(in, line)) ++rows;
    CHECK(rows == spec.replicates);
  }
  std::filesystem::remove_all(dir);
  spec.dump_dir = "/proc/rdet-cannot-write-here";
  CHECK(error_code_of([&] { run(spec); }) == code(ErrorCode::Io));
}
