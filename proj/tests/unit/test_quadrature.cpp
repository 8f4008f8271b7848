/*
 * (C) Copyright 2026 rdet developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "rdet/quadrature.hpp"
#include "test_util.hpp"

using namespace rdet;

TEST_CASE("polynomials and smooth functions") {
  CHECK(std::abs(quad::integrate([](double x) { return x * x; }, 0.0, 3.0).value - 9.0) < 1e-12);
  CHECK(std::abs(quad::integrate([](double x) { return std::sin(x); }, 0.0, M_PI).value - 2.0) < 1e-12);
  CHECK(std::abs(quad::integrate([](double x) { return std::exp(x); }, -1.0, 1.0).value -
                 (std::exp(1.0) - std::exp(-1.0))) < 1e-12);
}

TEST_CASE("reversed and empty intervals") {
  CHECK(test::error_code_of([] { quad::integrate([](double x) { return x; }, 2.0, 0.0); }) ==
        test::code(ErrorCode::Domain));
  CHECK(quad::integrate([](double x) { return x; }, 1.0, 1.0).value == 0.0);
}

TEST_CASE("integrable endpoint singularities") {
  // int_0^1 log x = -1 ; int_0^1 x^(-1/2) = 2
  CHECK(std::abs(quad::integrate([](double x) { return std::log(x); }, 0.0, 1.0).value + 1.0) < 1e-9);
  CHECK(std::abs(quad::integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0).value - 2.0) < 1e-7);
  // Semicircle area via square-root edges.
  const auto r = quad::integrate_sqrt_edges(
      [](double x) { return std::sqrt(std::max(0.0, 1.0 - x * x)); }, -1.0, 1.0);
  CHECK(std::abs(r.value - M_PI / 2.0) < 1e-12);
}

TEST_CASE("half line") {
  CHECK(std::abs(quad::integrate_to_infinity([](double x) { return std::exp(-x); }, 0.0).value - 1.0) < 1e-12);
  CHECK(std::abs(quad::integrate_to_infinity([](double x) { return 1.0 / (1.0 + x * x); }, 0.0).value -
                 M_PI / 2.0) < 1e-10);
}

TEST_CASE("non-finite integrand is a numeric error") {
  CHECK(test::error_code_of([] {
          quad::integrate([](double) { return std::nan(""); }, 0.0, 1.0);
        }) == test::code(ErrorCode::Numeric));
}
