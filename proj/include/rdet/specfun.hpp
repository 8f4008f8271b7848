/*
 * (C) Copyright 2026 rdet developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

// Log-gamma, digamma, polygamma and the Binet kernel.
//
// All functions are pure. Arguments outside the stated domain raise
// rdet::Error with ErrorCode::Domain (or ErrorCode::Unsupported for a
// polygamma order outside 1..4).

namespace rdet::specfun {

struct Constants {
  static constexpr double euler_gamma = 0.57721566490153286060651209;
  static constexpr double log_two = 0.69314718055994530941723212;
  static constexpr double pi = 3.14159265358979323846264338;
  static constexpr double pi_sq = 9.86960440108935861883449099;
  static constexpr double half_log_two_pi = 0.91893853320467274178032973;
};

/// log Γ(x) for x > 0.
double lgamma(double x);

/// Ψ(x) = d/dx log Γ(x) for x > 0.
double digamma(double x);

/// Ψ^(q)(x) for q in {1, 2, 3, 4} and x > 0.
double polygamma(int q, double x);

/// f(s) = (1/2 - 1/s + 1/(e^s - 1)) / s, the kernel of Binet's remainder
/// integral; f(0) = 1/12.
double binet_f(double s);

/// Ψ(x) - log x, evaluated without the cancellation of the naive difference
/// at large x.
double digamma_minus_log(double x);

/// Leading term of Ψ^(q) at large x, (-1)^(q-1) (q-1)! / x^q.
double polygamma_leading(int q, double x);

}  // namespace rdet::specfun
