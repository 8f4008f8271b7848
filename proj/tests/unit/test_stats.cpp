/*
 * (C) Copyright 2026 rdet developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "rdet/rng.hpp"
#include "rdet/stats.hpp"
#include "test_util.hpp"

using namespace rdet;
using rdet::test::code;
using rdet::test::error_code_of;

TEST_CASE("Kolmogorov tail") {
  // Reference values of the Kolmogorov survival function.
  CHECK(std::abs(stats::kolmogorov_q(1.0) - 0.26999967167735456) < 1e-14);
  CHECK(std::abs(stats::kolmogorov_q(0.5) - 0.9639452436648751) < 1e-14);
  CHECK(std::abs(stats::kolmogorov_q(2.0) - 0.0006709252557796953) < 1e-16);
  CHECK(stats::kolmogorov_q(0.0) == 1.0);
  CHECK(stats::kolmogorov_q(10.0) < 1e-80);
}

TEST_CASE("two-sample identical") {
  std::vector<double> x;
  for (int i = 0; i < 50; ++i) x.push_back(std::sin(i * 1.7));
  const auto r = stats::ks_two_sample(x, x);
  CHECK(r.statistic == 0.0);
  CHECK(r.p_value == 1.0);
}

TEST_CASE("uniform calibration and normal power") {
  auto s = derive_stream(2024, 0);
  std::vector<double> u(10000);
  for (auto& v : u) v = s.uniform();
  CHECK(stats::ks_one_sample(u, [](double x) { return std::clamp(x, 0.0, 1.0); }).p_value > 0.001);
  std::vector<double> z(10000);
  for (auto& v : z) v = s.normal() + 0.5;
  CHECK(stats::ks_one_sample(z, [](double x) { return stats::normal_cdf(x); }).p_value < 1e-6);
}

TEST_CASE("statistic against a direct evaluation") {
  // Three points against the uniform cdf: D = max(i/n - x_i, x_i - (i-1)/n).
  std::vector<double> x;
  for (int i = 0; i < 20; ++i) x.push_back((i + 0.5) / 20.0);
  x[0] = 0.3;
  const auto r = stats::ks_one_sample(x, [](double v) { return v; });
  double d = 0.0;
  auto sorted = x;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < 20; ++i)
    d = std::max({d, (i + 1) / 20.0 - sorted[i], sorted[i] - i / 20.0});
  CHECK(r.statistic == doctest::Approx(d));
}

TEST_CASE("insufficient data") {
  std::vector<double> x(19, 0.5);
  CHECK(error_code_of([&] { stats::ks_one_sample(x, [](double v) { return v; }); }) ==
        code(ErrorCode::InsufficientData));
  std::vector<double> y(30, 0.5);
  CHECK(error_code_of([&] { stats::ks_two_sample(x, y); }) == code(ErrorCode::InsufficientData));
}

TEST_CASE("summary statistics") {
  std::vector<double> x{1, 2, 3, 4};
  std::vector<double> y{2, 4, 6, 8};
  CHECK(stats::mean(x) == 2.5);
  CHECK(stats::variance(x) == doctest::Approx(5.0 / 3.0));
  CHECK(stats::covariance(x, y) == doctest::Approx(10.0 / 3.0));
  CHECK(stats::median(x) == 2.5);
  CHECK(stats::median({5, 1, 3}) == 3.0);
  CHECK(std::abs(stats::normal_cdf(1.96) - 0.9750021048517795) < 1e-12);
}
