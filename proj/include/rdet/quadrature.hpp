/*
 * (C) Copyright 2026 rdet developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <functional>

namespace rdet::quad {

struct Options {
  double abs_tol = 1e-11;
  double rel_tol = 1e-11;
  int max_intervals = 2000;
};

struct Result {
  double value = 0.0;
  double error = 0.0;
  int intervals = 0;
};

using Integrand = std::function<double(double)>;

/// Globally adaptive Gauss-Kronrod (7/15) on a finite interval. Never
/// evaluates the integrand at a or b.
Result integrate(const Integrand& f, double a, double b, Options opts = {});

/// Integral over [a, inf) via x = a + u / (1 - u).
Result integrate_to_infinity(const Integrand& f, double a, Options opts = {});

/// Integral over [a, b] of an integrand with square-root type behaviour at
/// both ends: the halves are mapped by x = a + u^2 and x = b - u^2.
Result integrate_sqrt_edges(const Integrand& f, double a, double b,
                            Options opts = {});

}  // namespace rdet::quad
