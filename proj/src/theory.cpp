/*
 * (C) Copyright 2026 rdet developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "rdet/theory.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <string>

#include "numeric.hpp"
#include "rdet/error.hpp"
#include "rdet/specfun.hpp"

namespace rdet {

const char* to_string(EnsembleKind kind) noexcept {
  switch (kind) {
    case EnsembleKind::Gram: return "gram";
    case EnsembleKind::Wishart: return "wishart";
    case EnsembleKind::Radial: return "radial";
  }
  return "unknown";
}

EnsembleKind parse_kind(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char ch) { return std::tolower(ch); });
  if (lower == "gram") return EnsembleKind::Gram;
  if (lower == "wishart") return EnsembleKind::Wishart;
  if (lower == "radial") return EnsembleKind::Radial;
  raise(ErrorCode::InvalidArgument, "unknown ensemble kind '" + lower + "'");
}

}  // namespace rdet

namespace rdet::theory {
namespace {

using specfun::Constants;
using specfun::digamma;
using specfun::lgamma;
using specfun::polygamma;

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::int64_t kDirectHarmonicLimit = 1'000'000;

void check_np(std::int64_t n, std::int64_t p) {
  if (n < 1 || p < 1 || p > n)
    raise(ErrorCode::Domain, "need 1 <= p <= n (n=" + std::to_string(n) +
                                 ", p=" + std::to_string(p) + ")");
}

double radial_mean(std::int64_t n, std::int64_t p) {
  return static_cast<double>(p) *
         specfun::digamma_minus_log(0.5 * static_cast<double>(n));
}

double gram_mean_sum(std::int64_t n, std::int64_t p) {
  const double half_n = 0.5 * static_cast<double>(n);
  const double psi_n = digamma(half_n);
  detail::CompensatedSum sum;
  for (std::int64_t k = 2; k <= p; ++k)
    sum += digamma(0.5 * static_cast<double>(n - k + 1)) - psi_n;
  return sum.value();
}

double gram_variance_sum(std::int64_t n, std::int64_t p) {
  const double tri_n = polygamma(1, 0.5 * static_cast<double>(n));
  detail::CompensatedSum sum;
  for (std::int64_t k = 2; k <= p; ++k)
    sum += polygamma(1, 0.5 * static_cast<double>(n - k + 1)) - tri_n;
  return sum.value();
}

}  // namespace

double J(double u) {
  if (std::isnan(u)) raise(ErrorCode::Domain, "J of NaN");
  if (u < 0.0) return kInf;
  if (u == 0.0) return 1.0;
  return u * std::log(u) - u + 1.0;
}

double F(double t) {
  if (!(t >= 0.0)) raise(ErrorCode::Domain, "F requires t >= 0");
  if (t == 0.0) return 0.0;
  return 0.5 * t * t * std::log(t) - 0.75 * t * t + t;
}

double lln_limit(double t) {
  if (!(t >= 0.0 && t <= 1.0))
    raise(ErrorCode::Domain, "lln_limit requires t in [0, 1]");
  return -J(1.0 - t);
}

CltCurves clt_curves(EnsembleKind kind, double t) {
  if (!(t >= 0.0 && t < 1.0))
    raise(ErrorCode::Domain, "clt_curves requires t in [0, 1)");
  const double log1m = std::log1p(-t);
  switch (kind) {
    case EnsembleKind::Gram: return {t + 0.5 * log1m, -2.0 * log1m - 2.0 * t};
    case EnsembleKind::Wishart: return {0.5 * log1m, -2.0 * log1m};
    case EnsembleKind::Radial: return {-t, 2.0 * t};
  }
  raise(ErrorCode::InvalidArgument, "unknown ensemble kind");
}

EndpointConstants endpoint_constants(EnsembleKind kind) {
  const double g = Constants::euler_gamma;
  const double l2 = Constants::log_two;
  const double pi2 = Constants::pi_sq;
  switch (kind) {
    case EnsembleKind::Gram:
      return {(3.0 - g - l2) / 2.0, (8.0 * g + pi2) / 4.0};
    case EnsembleKind::Wishart:
      return {-(g + l2 - 1.0) / 2.0, (2.0 * g + pi2 + 8.0) / 4.0};
    case EnsembleKind::Radial:
      raise(ErrorCode::Unsupported,
            "radial process has no log n endpoint normalization");
  }
  raise(ErrorCode::InvalidArgument, "unknown ensemble kind");
}

double digamma_half_sum_closed_form(std::int64_t k) {
  if (k < 2) raise(ErrorCode::Domain, "digamma_half_sum_closed_form needs k >= 2");
  const double kd = static_cast<double>(k);
  return 0.5 * (kd - 2.0) * digamma(0.5 * kd) - kd +
         0.5 * (kd - 1.0) * digamma(0.5 * (kd + 1.0)) +
         (2.0 - Constants::euler_gamma - 2.0 * Constants::log_two) / 2.0;
}

double exact_mean_gram_closed_form(std::int64_t n, std::int64_t p) {
  check_np(n, p);
  const double nd = static_cast<double>(n);
  const double pd = static_cast<double>(p);
  double value = 0.5 * (nd - 1.0) * digamma(0.5 * (nd + 1.0)) +
                 0.5 * (nd - 2.0 * pd) * digamma(0.5 * nd) + 1.0 - pd;
  value -= 0.5 * (nd - pd - 1.0) * digamma(0.5 * (nd - pd + 1.0));
  if (p < n) value -= 0.5 * (nd - pd) * digamma(0.5 * (nd - pd + 2.0));
  return value;
}

double exact_mean(EnsembleKind kind, std::int64_t n, std::int64_t p) {
  check_np(n, p);
  switch (kind) {
    case EnsembleKind::Radial: return radial_mean(n, p);
    case EnsembleKind::Gram:
    case EnsembleKind::Wishart: {
      const double by_sum = gram_mean_sum(n, p);
      const double closed = exact_mean_gram_closed_form(n, p);
      // The closed form carries O(n log n) intermediate terms, so its rounding
      // error grows with n.
      const double tol = 1e-8 * std::max(1.0, std::abs(by_sum) * 1e-3);
      if (std::abs(by_sum - closed) > tol)
        raise(ErrorCode::Numeric, "Gram mean: digamma sum and closed form disagree");
      return kind == EnsembleKind::Gram ? by_sum : by_sum + radial_mean(n, p);
    }
  }
  raise(ErrorCode::InvalidArgument, "unknown ensemble kind");
}

double harmonic(std::int64_t n) {
  if (n < 0) raise(ErrorCode::Domain, "harmonic requires n >= 0");
  if (n <= kDirectHarmonicLimit) {
    detail::CompensatedSum sum;
    for (std::int64_t k = n; k >= 1; --k) sum += 1.0 / static_cast<double>(k);
    return sum.value();
  }
  const double nd = static_cast<double>(n);
  const double inv2 = 1.0 / (nd * nd);
  return std::log(nd) + Constants::euler_gamma + 0.5 / nd - inv2 / 12.0 +
         inv2 * inv2 / 120.0;
}

MomentReport variance_report(EnsembleKind kind, std::int64_t n, std::int64_t p) {
  check_np(n, p);
  MomentReport report;
  report.n = n;
  report.p = p;
  report.mean = exact_mean(kind, n, p);
  const double radial_var =
      static_cast<double>(p) * polygamma(1, 0.5 * static_cast<double>(n));
  const double gram_var = gram_variance_sum(n, p);
  switch (kind) {
    case EnsembleKind::Gram: report.variance = gram_var; break;
    case EnsembleKind::Wishart: report.variance = gram_var + radial_var; break;
    case EnsembleKind::Radial: report.variance = radial_var; break;
  }
  report.variance_center =
      2.0 * (harmonic(n) - harmonic(n - p) -
             static_cast<double>(p) / static_cast<double>(n));
  detail::CompensatedSum bound;
  for (std::int64_t k = n; k >= n - p + 1; --k) {
    const double kd = static_cast<double>(k);
    bound += 1.0 / (kd * kd);
  }
  report.variance_bound = 4.0 * bound.value();
  if (kind == EnsembleKind::Gram &&
      std::abs(gram_var - report.variance_center) >
          report.variance_bound + 1e-9)
    raise(ErrorCode::Numeric, "Gram variance outside its harmonic-number bound");
  return report;
}

double cgf_gram(std::int64_t n, std::int64_t k, double theta) {
  if (k < 2 || k > n)
    raise(ErrorCode::Domain, "cgf_gram requires 2 <= k <= n");
  const double a = 0.5 * static_cast<double>(n - k + 1);
  const double half_n = 0.5 * static_cast<double>(n);
  if (!(theta > -a))
    raise(ErrorCode::DivergentCgf,
          "cgf_gram requires theta > -(n-k+1)/2 = " + std::to_string(-a));
  return lgamma(a + theta) - lgamma(a) - lgamma(half_n + theta) +
         lgamma(half_n);
}

double cgf_radial(std::int64_t n, double theta) {
  if (n < 1) raise(ErrorCode::Domain, "cgf_radial requires n >= 1");
  const double half_n = 0.5 * static_cast<double>(n);
  if (!(theta > -half_n))
    raise(ErrorCode::DivergentCgf, "cgf_radial requires theta > -n/2");
  return lgamma(theta + half_n) - lgamma(half_n) - theta * std::log(half_n);
}

double finite_n_ncgf(EnsembleKind kind, std::int64_t n, double T,
                     double theta) {
  if (n < 2) raise(ErrorCode::Domain, "finite_n_ncgf requires n >= 2");
  if (!(T > 0.0 && T <= 1.0))
    raise(ErrorCode::Domain, "finite_n_ncgf requires T in (0, 1]");
  const double nd = static_cast<double>(n);
  const auto steps = static_cast<std::int64_t>(std::floor(nd * T));
  const double scaled = nd * theta;

  auto gram = [&] {
    if (steps >= 2 && !(scaled > -0.5 * static_cast<double>(n - steps + 1)))
      raise(ErrorCode::DivergentCgf,
            "finite_n_ncgf: theta outside the finite-n Gram domain");
    detail::CompensatedSum sum;
    for (std::int64_t k = 2; k <= steps; ++k) sum += cgf_gram(n, k, scaled);
    return sum.value() / (nd * nd);
  };
  auto radial = [&] {
    if (!(theta > -0.5))
      raise(ErrorCode::DivergentCgf,
            "finite_n_ncgf: theta outside the radial domain");
    return static_cast<double>(steps) * cgf_radial(n, scaled) / (nd * nd);
  };

  if (theta == 0.0) return 0.0;
  switch (kind) {
    case EnsembleKind::Gram: return gram();
    case EnsembleKind::Radial: return radial();
    case EnsembleKind::Wishart: return gram() + radial();
  }
  raise(ErrorCode::InvalidArgument, "unknown ensemble kind");
}

MpLaw::MpLaw(double c, double sigma2) : c_(c), sigma2_(sigma2) {
  if (!(c > 0.0) || std::isinf(c))
    raise(ErrorCode::Domain, "MP ratio c must be positive");
  if (!(sigma2 > 0.0) || std::isinf(sigma2))
    raise(ErrorCode::Domain, "MP scale sigma2 must be positive");
  const double root = std::sqrt(c);
  lower_ = sigma2 * (1.0 - root) * (1.0 - root);
  upper_ = sigma2 * (1.0 + root) * (1.0 + root);
}

double MpLaw::atom() const { return std::max(0.0, 1.0 - 1.0 / c_); }

double MpLaw::density(double x) const {
  if (!(x > 0.0)) raise(ErrorCode::Domain, "MP density queried at x <= 0");
  if (x <= lower_ || x >= upper_) return 0.0;
  return std::sqrt((x - lower_) * (upper_ - x)) /
         (2.0 * Constants::pi * sigma2_ * c_ * x);
}

double mp_density(const MpLaw& law, double x) { return law.density(x); }

double mp_log_moment(double c) {
  if (!(c > 0.0 && c < 1.0))
    raise(ErrorCode::Domain, "mp_log_moment requires c in (0, 1)");
  return ((c - 1.0) * std::log1p(-c) - c) / c;
}

double mellin_log_det(std::int64_t n, std::int64_t r, double s) {
  if (r < 1 || r > n) raise(ErrorCode::Domain, "mellin_log_det requires 1 <= r <= n");
  const double limit = -0.5 * static_cast<double>(n - r + 1);
  if (!(s > limit))
    raise(ErrorCode::DivergentCgf,
          "mellin_log_det requires s > -(n-r+1)/2 = " + std::to_string(limit));
  if (s == 0.0) return 0.0;
  const double shift = s * (Constants::log_two - std::log(static_cast<double>(n)));
  detail::CompensatedSum sum;
  for (std::int64_t j = 1; j <= r; ++j) {
    const double a = 0.5 * static_cast<double>(n - j + 1);
    sum += shift + lgamma(a + s) - lgamma(a);
  }
  return sum.value();
}

}  // namespace rdet::theory
