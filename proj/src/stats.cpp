/*
 * (C) Copyright 2026 rdet developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "rdet/stats.hpp"

#include <algorithm>
#include <cmath>

#include "numeric.hpp"
#include "rdet/error.hpp"

namespace rdet::stats {
namespace {

constexpr std::size_t kMinSamples = 20;

void check_size(std::size_t n) {
  if (n < kMinSamples)
    raise(ErrorCode::InsufficientData, "KS test needs at least 20 samples, got " + std::to_string(n));
}

void check_finite(const std::vector<double>& x) {
  for (double v : x)
    if (!std::isfinite(v)) raise(ErrorCode::Domain, "KS test sample is not finite");
}

double p_value(double d, double effective_n) {
  const double root = std::sqrt(effective_n);
  return kolmogorov_q((root + 0.12 + 0.11 / root) * d);
}

}  // namespace

double kolmogorov_q(double lambda) {
  if (lambda < 0.0) raise(ErrorCode::Domain, "kolmogorov_q requires lambda >= 0");
  if (lambda < 0.2) return 1.0;
  const double a = -2.0 * lambda * lambda;
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 200; ++k) {
    const double term = sign * std::exp(a * k * k);
    sum += term;
    if (std::abs(term) < 1e-300 || std::abs(term) <= 1e-16 * std::abs(sum)) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_one_sample(std::vector<double> samples, const std::function<double(double)>& cdf) {
  check_size(samples.size());
  check_finite(samples);
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
  }
  return {d, p_value(d, n)};
}

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
  check_size(a.size());
  check_size(b.size());
  check_finite(a);
  check_finite(b);
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return {d, p_value(d, na * nb / (na + nb))};
}

double normal_cdf(double x, double mean, double sd) {
  if (!(sd > 0.0)) raise(ErrorCode::Domain, "normal_cdf requires sd > 0");
  return 0.5 * std::erfc(-(x - mean) / (sd * std::sqrt(2.0)));
}

double mean(const std::vector<double>& x) {
  if (x.empty()) raise(ErrorCode::InsufficientData, "mean of an empty sample");
  detail::CompensatedSum s;
  for (double v : x) s += v;
  return s.value() / static_cast<double>(x.size());
}

double variance(const std::vector<double>& x) { return covariance(x, x); }

double covariance(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) raise(ErrorCode::InvalidArgument, "covariance: size mismatch");
  if (x.size() < 2) raise(ErrorCode::InsufficientData, "covariance needs two samples");
  const double mx = mean(x);
  const double my = mean(y);
  detail::CompensatedSum s;
  for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - mx) * (y[i] - my);
  return s.value() / static_cast<double>(x.size() - 1);
}

double median(std::vector<double> x) {
  if (x.empty()) raise(ErrorCode::InsufficientData, "median of an empty sample");
  const std::size_t mid = x.size() / 2;
  std::nth_element(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(mid), x.end());
  const double upper = x[mid];
  if (x.size() % 2 == 1) return upper;
  const double lower = *std::max_element(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

}  // namespace rdet::stats
