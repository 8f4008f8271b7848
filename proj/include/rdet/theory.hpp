/*
 * (C) Copyright 2026 rdet developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

// Closed-form finite-n and limiting quantities for the log-determinant
// processes of the uniform Gram ensemble (Gram), the normalized Wishart
// ensemble (Wishart) and the auxiliary radial process (Radial), with
//
//   Wishart(n, r) = Gram(n, r) + Radial(n, r),   Gram independent of Radial.
//
// Gram(n, r) is the sum over j = 2..r of log beta((n-j+1)/2, (j-1)/2),
// Radial(n, r) the sum over k = 1..r of log(chi2_n / n).

#include <cstdint>
#include <string_view>

namespace rdet {

enum class EnsembleKind { Gram, Wishart, Radial };

const char* to_string(EnsembleKind kind) noexcept;
/// Accepts "gram", "wishart", "radial" (case-insensitive).
EnsembleKind parse_kind(std::string_view name);

}  // namespace rdet

namespace rdet::theory {

/// J(u) = u log u - u + 1 for u > 0, 1 at u = 0, +inf for u < 0.
double J(double u);

/// F(t) = integral of J over [0, t], for t >= 0.
double F(double t);

/// Almost-sure limit of path(t)/n for both Gram and Wishart: -J(1 - t).
double lln_limit(double t);

struct CltCurves {
  double drift;
  double variance;
};

/// Limiting drift and variance of the centered fluctuation process at t < 1.
CltCurves clt_curves(EnsembleKind kind, double t);

struct EndpointConstants {
  double mean_const;
  double var_const;
};

/// Limits of E[path(n)] + n + log(n)/2 and Var[path(n)] - 2 log n.
/// Radial has no log n endpoint blow-up and is rejected (Unsupported).
EndpointConstants endpoint_constants(EnsembleKind kind);

/// Exact E[path(n, p)] for 1 <= p <= n from digamma sums. For Gram the sum is
/// cross-checked against the closed form below.
double exact_mean(EnsembleKind kind, std::int64_t n, std::int64_t p);

/// The closed form of the Gram mean obtained by telescoping the half-integer
/// digamma sums.
double exact_mean_gram_closed_form(std::int64_t n, std::int64_t p);

struct MomentReport {
  std::int64_t n = 0;
  std::int64_t p = 0;
  double mean = 0.0;
  double variance = 0.0;         ///< exact, from trigamma sums
  double variance_center = 0.0;  ///< 2 (H_n - H_{n-p} - p/n)
  double variance_bound = 0.0;   ///< 4 sum_{k=n-p+1}^{n} 1/k^2
};

/// Exact mean and variance of path(n, p). For Gram the exact variance is
/// checked to lie within variance_bound of variance_center.
MomentReport variance_report(EnsembleKind kind, std::int64_t n, std::int64_t p);

/// H_n; direct summation up to 10^6, asymptotic expansion above.
double harmonic(std::int64_t n);

/// Sum_{i=1}^{k-1} Psi(i/2) in closed form (k >= 2).
double digamma_half_sum_closed_form(std::int64_t k);

/// log E[h^theta] for h ~ beta((n-k+1)/2, (k-1)/2), 2 <= k <= n.
double cgf_gram(std::int64_t n, std::int64_t k, double theta);

/// log E[exp(theta log(chi2_n / n))].
double cgf_radial(std::int64_t n, double theta);

/// (1/n^2) sum_k Lambda_{n,k}(n theta) over k <= floor(nT), i.e. the
/// normalized cgf of path(floor(nT))/n at the constant test function theta.
double finite_n_ncgf(EnsembleKind kind, std::int64_t n, double T,
                     double theta);

/// Marchenko-Pastur law with ratio c and scale sigma2.
class MpLaw {
public:
  MpLaw(double c, double sigma2);

  double c() const { return c_; }
  double sigma2() const { return sigma2_; }
  double lower_edge() const { return lower_; }
  double upper_edge() const { return upper_; }
  /// Mass of the atom at 0, (1 - 1/c)_+.
  double atom() const;
  /// Absolutely continuous density; x must be > 0.
  double density(double x) const;

private:
  double c_;
  double sigma2_;
  double lower_;
  double upper_;
};

double mp_density(const MpLaw& law, double x);

/// Integral of log x against the unit-scale law with ratio c in (0, 1):
/// ((c - 1) log(1 - c) - c) / c.
double mp_log_moment(double c);

/// log E[(det X)^s] for X = B'B / n, B an n x r standard Gaussian matrix,
/// s > -(n - r + 1)/2.
double mellin_log_det(std::int64_t n, std::int64_t r, double s);

}  // namespace rdet::theory
