/*
 * (C) Copyright 2026 rdet developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "rdet/specfun.hpp"

#include <array>
#include <cmath>
#include <string>

#include "rdet/error.hpp"

namespace rdet::specfun {
namespace {

// B_2, B_4, ..., B_24.
constexpr std::array<double, 12> kBernoulliEven = {
    1.0 / 6.0,          -1.0 / 30.0,       1.0 / 42.0,
    -1.0 / 30.0,        5.0 / 66.0,        -691.0 / 2730.0,
    7.0 / 6.0,          -3617.0 / 510.0,   43867.0 / 798.0,
    -174611.0 / 330.0,  854513.0 / 138.0,  -236364091.0 / 2730.0};

// Stirling terms use B_2..B_14.
constexpr int kStirlingTerms = 7;
constexpr double kAsymptoticThreshold = 8.0;
constexpr double kPolygammaThreshold = 16.0;

void check_positive(double x, const char* fn) {
  if (!(x > 0.0) || std::isinf(x))
    raise(ErrorCode::Domain, std::string(fn) + " requires a finite x > 0");
}

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

double lgamma(double x) {
  check_positive(x, "lgamma");
  double shift = 0.0;
  if (x < kAsymptoticThreshold) {
    double prod = 1.0;
    while (x < kAsymptoticThreshold) {
      prod *= x;
      x += 1.0;
    }
    shift = std::log(prod);
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  double series = 0.0;
  double pw = inv;
  for (int k = 1; k <= kStirlingTerms; ++k) {
    series += kBernoulliEven[k - 1] / (2.0 * k * (2.0 * k - 1.0)) * pw;
    pw *= inv2;
  }
  return (x - 0.5) * std::log(x) - x + Constants::half_log_two_pi + series -
         shift;
}

double digamma(double x) {
  check_positive(x, "digamma");
  double acc = 0.0;
  while (x < kAsymptoticThreshold) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  const double inv2 = 1.0 / (x * x);
  double series = 0.0;
  double pw = inv2;
  for (int k = 1; k <= kStirlingTerms; ++k) {
    series += kBernoulliEven[k - 1] / (2.0 * k) * pw;
    pw *= inv2;
  }
  return acc + std::log(x) - 0.5 / x - series;
}

double digamma_minus_log(double x) {
  check_positive(x, "digamma_minus_log");
  if (x < kAsymptoticThreshold) return digamma(x) - std::log(x);
  const double inv2 = 1.0 / (x * x);
  double series = 0.0;
  double pw = inv2;
  for (int k = 1; k <= kStirlingTerms; ++k) {
    series += kBernoulliEven[k - 1] / (2.0 * k) * pw;
    pw *= inv2;
  }
  return -0.5 / x - series;
}

double polygamma(int q, double x) {
  if (q < 1 || q > 4)
    raise(ErrorCode::Unsupported,
          "polygamma order " + std::to_string(q) + " (supported: 1..4)");
  check_positive(x, "polygamma");
  const double sign = (q % 2 == 1) ? 1.0 : -1.0;  // (-1)^(q+1)
  const double qfact = factorial(q);
  // Psi^(q)(x) = Psi^(q)(x+1) - (-1)^q q! / x^(q+1)
  double acc = 0.0;
  while (x < kPolygammaThreshold) {
    acc += sign * qfact / std::pow(x, q + 1);
    x += 1.0;
  }
  const double inv = 1.0 / x;
  double sum = factorial(q - 1) * std::pow(inv, q) +
               0.5 * qfact * std::pow(inv, q + 1);
  const double inv2 = inv * inv;
  double pw = std::pow(inv, q + 2);
  for (int k = 1; k <= kStirlingTerms; ++k) {
    // B_2k (2k+q-1)! / (2k)! / x^(2k+q)
    double ratio = 1.0;
    for (int i = 2 * k + 1; i <= 2 * k + q - 1; ++i) ratio *= i;
    sum += kBernoulliEven[k - 1] * ratio * pw;
    pw *= inv2;
  }
  return acc + sign * sum;
}

double polygamma_leading(int q, double x) {
  const double sign = (q % 2 == 1) ? 1.0 : -1.0;
  return sign * factorial(q - 1) / std::pow(x, q);
}

double binet_f(double s) {
  if (!(s >= 0.0) || std::isinf(s))
    raise(ErrorCode::Domain, "binet_f requires a finite s >= 0");
  if (s < 1.0) {
    // f(s) = sum_k B_2k s^(2k-2) / (2k)!, radius of convergence 2*pi.
    const double s2 = s * s;
    double term_pow = 1.0;
    double fact = 2.0;  // (2k)!
    double sum = 0.0;
    for (int k = 1; k <= static_cast<int>(kBernoulliEven.size()); ++k) {
      sum += kBernoulliEven[k - 1] / fact * term_pow;
      term_pow *= s2;
      fact *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
    }
    return sum;
  }
  return (0.5 - 1.0 / s + 1.0 / std::expm1(s)) / s;
}

}  // namespace rdet::specfun
