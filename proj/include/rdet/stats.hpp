/*
 * (C) Copyright 2026 rdet developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <functional>
#include <vector>

namespace rdet::stats {

struct KsResult {
  double statistic;
  double p_value;
};

/// Q(lambda) = 2 sum_{k>=1} (-1)^(k-1) exp(-2 k^2 lambda^2), the asymptotic
/// Kolmogorov tail.
double kolmogorov_q(double lambda);

/// One-sample Kolmogorov-Smirnov test against a continuous cdf. The samples
/// need not be sorted. At least 20 samples (InsufficientData otherwise).
KsResult ks_one_sample(std::vector<double> samples, const std::function<double(double)>& cdf);

/// Two-sample Kolmogorov-Smirnov test; at least 20 samples on each side.
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

double normal_cdf(double x, double mean = 0.0, double sd = 1.0);

double mean(const std::vector<double>& x);
/// Unbiased sample variance.
double variance(const std::vector<double>& x);
/// Unbiased sample covariance.
double covariance(const std::vector<double>& x, const std::vector<double>& y);
double median(std::vector<double> x);

}  // namespace rdet::stats
