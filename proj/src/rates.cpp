/*
 * (C) Copyright 2026 rdet developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "rdet/rates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rdet/error.hpp"
#include "rdet/quadrature.hpp"

namespace rdet::rates {
namespace {

using theory::F;
using theory::J;

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kZeroTol = 1e-12;
constexpr double kResidualTol = 1e-12;
constexpr int kMaxBracketSteps = 200;
constexpr int kBisectionSteps = 80;
constexpr double kGolden = 0.6180339887498949;

void check_T(double T) {
  if (!(T > 0.0 && T < 1.0)) raise(ErrorCode::Domain, "T must lie in (0, 1)");
}

void check_kind_path(EnsembleKind kind, const char* what) {
  if (kind == EnsembleKind::Radial)
    raise(ErrorCode::Unsupported, std::string(what) + " is defined for Gram and Wishart only");
}

// x log(x / p) with 0 log 0 = 0.
double xlogx_over(double x, double p) {
  if (x == 0.0) return 0.0;
  if (p == 0.0) return kInf;
  return x * std::log(x / p);
}

// H(1 - t | e^y) for y < 0, using log(1 - e^y) = log(-expm1(y)).
double entropy_exp(double t, double y) {
  const double s = 1.0 - t;
  double value = 0.0;
  if (s > 0.0) value += s * (std::log(s) - y);
  if (t > 0.0) value += t * (std::log(t) - std::log(-std::expm1(y)));
  return std::max(value, 0.0);
}

// Gram endpoint map at a = 1 + 2 theta, written as -T sum_{k>=2} x^(k-1)/(k(k-1))
// with x = T/a in (0, 1], which avoids the cancellation of the J differences
// when a is large.
double phi_gram_raw(double T, double a) {
  const double x = T / a;
  if (x >= 0.5) {
    const double b = a - T;
    if (b <= 0.0) return -T;
    return -b * std::log1p(-x) - T;
  }
  double sum = 0.0;
  double pw = x;
  for (int k = 2; k < 200; ++k) {
    const double term = pw / (static_cast<double>(k) * (k - 1));
    sum += term;
    if (term < 1e-18 * sum) break;
    pw *= x;
  }
  return -T * sum;
}

// d/dtheta of phi_gram_raw: -2 (log1p(-x) + x) = 2 sum_{k>=2} x^k / k.
double dphi_gram_raw(double T, double a) {
  const double x = T / a;
  if (x >= 0.5) {
    if (a - T <= 0.0) return kInf;
    return -2.0 * (std::log1p(-x) + x);
  }
  double sum = 0.0;
  double pw = x * x;
  for (int k = 2; k < 200; ++k) {
    const double term = pw / k;
    sum += term;
    if (term < 1e-18 * sum) break;
    pw *= x;
  }
  return 2.0 * sum;
}

// Closed forms of L_T on the closed domain theta >= theta_lower.
double L_gram_closed(double T, double theta) {
  const double a = 1.0 + 2.0 * theta;
  return 0.5 * (F(a) - F(std::max(a - T, 0.0)) - F(1.0) + F(1.0 - T) - T * J(a));
}

double L_radial_closed(double T, double theta) { return 0.5 * T * J(1.0 + 2.0 * theta); }

double L_closed(EnsembleKind kind, double T, double theta) {
  switch (kind) {
    case EnsembleKind::Gram: return L_gram_closed(T, theta);
    case EnsembleKind::Radial: return L_radial_closed(T, theta);
    case EnsembleKind::Wishart:
      return L_gram_closed(T, theta) + L_radial_closed(T, theta);
  }
  raise(ErrorCode::InvalidArgument, "unknown ensemble kind");
}

double phi_raw(EnsembleKind kind, double T, double theta) {
  const double a = 1.0 + 2.0 * theta;
  if (T == 0.0) return 0.0;
  const double gram = phi_gram_raw(T, a);
  return kind == EnsembleKind::Gram ? gram : gram + T * std::log(a);
}

double dphi_raw(EnsembleKind kind, double T, double theta) {
  const double a = 1.0 + 2.0 * theta;
  const double gram = dphi_gram_raw(T, a);
  return kind == EnsembleKind::Gram ? gram : gram + 2.0 * T / a;
}

// Solves phi(theta) = xi on [theta_lower, inf) for xi in the range of phi.
double solve_theta(EnsembleKind kind, double T, double xi) {
  double lo = theta_lower(kind, T);
  double hi = 0.0;
  int steps = 0;
  double width = 1.0;
  while (phi_raw(kind, T, hi) < xi) {
    lo = hi;
    hi += width;
    width *= 2.0;
    if (++steps > kMaxBracketSteps)
      raise(ErrorCode::Numeric, "marginal_rate: could not bracket theta");
  }
  for (int i = 0; i < kBisectionSteps && hi - lo > 0.0; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (phi_raw(kind, T, mid) < xi)
      lo = mid;
    else
      hi = mid;
  }
  double theta = 0.5 * (lo + hi);
  for (int i = 0; i < 5; ++i) {
    const double residual = phi_raw(kind, T, theta) - xi;
    const double slope = dphi_raw(kind, T, theta);
    if (!(slope > 0.0) || std::isinf(slope)) break;
    const double next = theta - residual / slope;
    if (!(next >= lo && next <= hi)) break;
    theta = next;
  }
  const double residual = std::abs(phi_raw(kind, T, theta) - xi);
  if (residual > kResidualTol * std::max(1.0, std::abs(xi)))
    raise(ErrorCode::Numeric, "marginal_rate: root finder residual " + std::to_string(residual));
  return theta;
}

// Golden-section minimization of a unimodal function on [lo, hi].
template <class Fn>
std::pair<double, double> golden_min(Fn f, double lo, double hi) {
  double x1 = hi - kGolden * (hi - lo);
  double x2 = lo + kGolden * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int i = 0; i < 300 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo) + std::abs(hi)); ++i) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kGolden * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kGolden * (hi - lo);
      f2 = f(x2);
    }
  }
  return f1 <= f2 ? std::make_pair(x1, f1) : std::make_pair(x2, f2);
}

// Minimizes f over nodes, then refines between the neighbours of the best node.
template <class Fn>
std::pair<double, double> scan_and_refine(Fn f, const std::vector<double>& nodes) {
  std::size_t best = 0;
  double best_value = kInf;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double v = f(nodes[i]);
    if (v < best_value) {
      best_value = v;
      best = i;
    }
  }
  const double lo = nodes[best == 0 ? 0 : best - 1];
  const double hi = nodes[std::min(best + 1, nodes.size() - 1)];
  auto refined = golden_min(f, std::min(lo, hi), std::max(lo, hi));
  if (refined.second <= best_value) return refined;
  return {nodes[best], best_value};
}

}  // namespace

double entropy_H(double x, double p) {
  if (!(x >= 0.0 && x <= 1.0)) raise(ErrorCode::Domain, "entropy_H requires x in [0, 1]");
  if (!(p >= 0.0 && p <= 1.0)) raise(ErrorCode::Domain, "entropy_H requires p in [0, 1]");
  return std::max(0.0, xlogx_over(x, p) + xlogx_over(1.0 - x, 1.0 - p));
}

double g(double t, double theta) {
  if (!(t >= 0.0 && t < 1.0)) raise(ErrorCode::Domain, "g requires t in [0, 1)");
  if (!(theta > -0.5 * (1.0 - t)))
    raise(ErrorCode::DivergentCgf, "g requires theta > -(1-t)/2");
  return 0.5 * (J(1.0 - t + 2.0 * theta) - J(1.0 - t) - J(1.0 + 2.0 * theta));
}

GStar g_star(double t, double y) {
  if (!(t > 0.0 && t < 1.0)) raise(ErrorCode::Domain, "g_star requires t in (0, 1)");
  if (std::isnan(y)) raise(ErrorCode::Domain, "g_star of NaN");
  if (y >= 0.0) return {kInf, kNaN};
  return {0.5 * entropy_exp(t, y), -0.5 * (1.0 - t / (-std::expm1(y)))};
}

double instantaneous_rate(EnsembleKind kind, Part part, double t, double y) {
  if (std::isnan(y) || std::isnan(t)) raise(ErrorCode::Domain, "instantaneous_rate of NaN");
  if (kind == EnsembleKind::Radial) {
    if (part == Part::AC) return 0.5 * (std::expm1(y) - y);
    return y <= 0.0 ? -0.5 * y : kInf;
  }
  if (!(t >= 0.0 && t < 1.0))
    raise(ErrorCode::Domain, "instantaneous_rate requires t in [0, 1)");
  if (part == Part::Singular) return y <= 0.0 ? -0.5 * (1.0 - t) * y : kInf;
  if (kind == EnsembleKind::Gram) return y < 0.0 ? 0.5 * entropy_exp(t, y) : kInf;
  return 0.5 * std::expm1(y) - 0.5 * (1.0 - t) * y + 0.5 * J(1.0 - t);
}

double theta_lower(EnsembleKind kind, double T) {
  check_T(T);
  return kind == EnsembleKind::Radial ? -0.5 : -0.5 * (1.0 - T);
}

double L_T(EnsembleKind kind, double T, double theta) {
  const double lower = theta_lower(kind, T);
  if (!(theta > lower))
    raise(ErrorCode::DivergentCgf, "L_T requires theta > " + std::to_string(lower));
  if (theta == 0.0) return 0.0;
  return L_closed(kind, T, theta);
}

double phi(EnsembleKind kind, double T, double theta) {
  check_kind_path(kind, "phi");
  const double lower = theta_lower(kind, T);
  if (!(theta >= lower))
    raise(ErrorCode::DivergentCgf, "phi requires theta >= " + std::to_string(lower));
  return phi_raw(kind, T, theta);
}

double phi_theta_derivative(EnsembleKind kind, double T, double theta) {
  check_kind_path(kind, "phi");
  const double lower = theta_lower(kind, T);
  if (!(theta > lower))
    raise(ErrorCode::DivergentCgf, "phi derivative requires theta > " + std::to_string(lower));
  return dphi_raw(kind, T, theta);
}

const char* to_string(Branch branch) noexcept {
  switch (branch) {
    case Branch::Interior: return "interior";
    case Branch::AffineTail: return "affine-tail";
    case Branch::Zero: return "zero";
    case Branch::Infinite: return "infinite";
  }
  return "unknown";
}

double affine_junction(EnsembleKind kind, double T) {
  check_kind_path(kind, "affine_junction");
  check_T(T);
  return kind == EnsembleKind::Gram ? -T : J(T) - 1.0;
}

RateResult marginal_rate(EnsembleKind kind, double T, double xi) {
  check_kind_path(kind, "marginal_rate");
  check_T(T);
  if (std::isnan(xi)) raise(ErrorCode::Domain, "marginal_rate of NaN");
  const double lln = -J(1.0 - T);
  if (std::abs(xi - lln) <= kZeroTol) return {0.0, 0.0, Branch::Zero};
  if (kind == EnsembleKind::Gram && xi >= 0.0) return {kInf, std::nullopt, Branch::Infinite};
  if (std::isinf(xi)) return {kInf, std::nullopt, Branch::Infinite};

  const double lower = theta_lower(kind, T);
  const double junction = affine_junction(kind, T);
  if (xi < junction) {
    const double at_junction = lower * junction - L_closed(kind, T, lower);
    return {at_junction + lower * (xi - junction), lower, Branch::AffineTail};
  }
  const double theta = solve_theta(kind, T, xi);
  const double value = theta * xi - L_closed(kind, T, theta);
  return {std::max(value, 0.0), theta, Branch::Interior};
}

double optimal_path_derivative(EnsembleKind kind, double t, double theta) {
  check_kind_path(kind, "optimal_path");
  const double a = 1.0 + 2.0 * theta;
  if (kind == EnsembleKind::Gram) return std::log1p(-t / a);
  return std::log(a - t);
}

SmoothPath optimal_path(EnsembleKind kind, double T, double theta, int points) {
  check_kind_path(kind, "optimal_path");
  const double lower = theta_lower(kind, T);
  if (!(theta >= lower))
    raise(ErrorCode::DivergentCgf, "optimal_path requires theta >= " + std::to_string(lower));
  if (points < 2) raise(ErrorCode::InvalidArgument, "optimal_path needs at least 2 points");
  SmoothPath path;
  path.t.reserve(points);
  path.value.reserve(points);
  path.derivative.reserve(points);
  for (int i = 0; i < points; ++i) {
    const double t = (i == points - 1) ? T : T * static_cast<double>(i) / (points - 1);
    path.t.push_back(t);
    path.value.push_back(phi_raw(kind, t, theta));
    path.derivative.push_back(optimal_path_derivative(kind, t, theta));
  }
  return path;
}

namespace {

double atoms_rate(EnsembleKind kind, const std::vector<Atom>& atoms, double T) {
  double total = 0.0;
  for (const auto& atom : atoms) {
    if (!(atom.location >= 0.0 && atom.location <= T))
      raise(ErrorCode::Domain, "path atom outside [0, T]");
    if (std::isnan(atom.mass)) raise(ErrorCode::Domain, "path atom mass is NaN");
    if (atom.mass > 0.0) return kInf;
    total += instantaneous_rate(kind, Part::Singular, atom.location, atom.mass);
  }
  return total;
}

// Integral of the AC rate over [lo, hi]; +inf if the integrand is infinite
// anywhere the quadrature looks.
double ac_integral(EnsembleKind kind, const std::function<double(double)>& density,
                   double lo, double hi) {
  if (hi <= lo) return 0.0;
  bool infinite = false;
  auto integrand = [&](double t) {
    const double y = density(t);
    const double v = instantaneous_rate(kind, Part::AC, t, y);
    if (std::isinf(v)) {
      infinite = true;
      return 0.0;
    }
    return v;
  };
  quad::Options opts;
  opts.abs_tol = 1e-13;
  opts.rel_tol = 1e-12;
  opts.max_intervals = 5000;
  const auto r = quad::integrate(integrand, lo, hi, opts);
  return infinite ? kInf : r.value;
}

void check_path_T(EnsembleKind kind, double T) {
  if (kind == EnsembleKind::Radial) {
    if (!(T > 0.0 && T <= 1.0)) raise(ErrorCode::Domain, "path_rate requires T in (0, 1]");
  } else {
    check_T(T);
  }
}

}  // namespace

double path_rate(EnsembleKind kind, const std::function<double(double)>& density,
                 const std::vector<Atom>& atoms, double T) {
  check_path_T(kind, T);
  const double singular = atoms_rate(kind, atoms, T);
  if (std::isinf(singular)) return kInf;
  const double ac = ac_integral(kind, density, 0.0, T);
  return ac + singular;
}

double path_rate(EnsembleKind kind, const StepPath& path, double T) {
  check_path_T(kind, T);
  const auto& grid = path.grid;
  if (grid.size() < 2 || path.density.size() + 1 != grid.size())
    raise(ErrorCode::InvalidArgument, "StepPath needs m+1 grid points and m densities");
  if (grid.front() != 0.0) raise(ErrorCode::Domain, "StepPath grid must start at 0");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) raise(ErrorCode::Domain, "StepPath grid must be increasing");
  if (std::abs(grid.back() - T) > 1e-12)
    raise(ErrorCode::Domain, "StepPath grid must end at T");
  const double singular = atoms_rate(kind, path.atoms, T);
  if (std::isinf(singular)) return kInf;
  double total = singular;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double y = path.density[i];
    const double cell = ac_integral(kind, [y](double) { return y; }, grid[i], grid[i + 1]);
    if (std::isinf(cell)) return kInf;
    total += cell;
  }
  return total;
}

InfConvolution inf_convolution_check(double t, double u) {
  if (!(t >= 0.0 && t < 1.0)) raise(ErrorCode::Domain, "inf_convolution_check requires t in [0, 1)");
  if (!std::isfinite(u)) raise(ErrorCode::Domain, "inf_convolution_check requires finite u");
  auto objective = [t, u](double v) {
    if (!(v < 0.0)) return kInf;
    return instantaneous_rate(EnsembleKind::Gram, Part::AC, t, v) +
           instantaneous_rate(EnsembleKind::Radial, Part::AC, 0.0, u - v);
  };
  std::vector<double> nodes;
  for (double s = 4.0; s >= -12.0; s -= 0.02) nodes.push_back(-std::pow(10.0, s));
  const auto best = scan_and_refine(objective, nodes);
  return {best.second, instantaneous_rate(EnsembleKind::Wishart, Part::AC, t, u), best.first};
}

LegendreSup legendre_sup(EnsembleKind kind, double T, double xi) {
  const double lower = theta_lower(kind, T);
  auto neg = [&](double theta) {
    if (!(theta > lower)) return kInf;
    return -(theta * xi - L_closed(kind, T, theta));
  };
  std::vector<double> nodes;
  for (double s = -12.0; s <= 3.0; s += 0.01) nodes.push_back(lower + std::pow(10.0, s));
  const auto best = scan_and_refine(neg, nodes);
  return {-best.second, best.first};
}

double hiai_petz_B(double c) {
  if (!(c > 0.0 && c < 1.0)) raise(ErrorCode::Domain, "B(c) requires c in (0, 1)");
  return -0.25 * (3.0 * c - c * c * std::log(c) + (1.0 - c) * (1.0 - c) * std::log1p(-c));
}

double mp_log_energy(double c) {
  if (!(c > 0.0 && c < 1.0)) raise(ErrorCode::Domain, "mp_log_energy requires c in (0, 1)");
  const double inv = 1.0 / c;
  return -1.0 + 0.5 * (inv + std::log(c) + (inv - 1.0) * (inv - 1.0) * std::log1p(-c));
}

double spectral_rate_mp(double T, double sigma2) {
  if (!(sigma2 > 0.0) || std::isinf(sigma2))
    raise(ErrorCode::Domain, "spectral_rate_mp requires sigma2 > 0");
  const double c = T / sigma2;
  if (!(T > 0.0 && c > 0.0 && c < 1.0))
    raise(ErrorCode::Domain, "spectral_rate_mp requires T / sigma2 in (0, 1)");
  check_T(T);
  const double log_s2 = std::log(sigma2);
  const double energy = log_s2 + mp_log_energy(c);
  const double log_moment = log_s2 + theory::mp_log_moment(c);
  return -0.5 * T * T * energy + 0.5 * T * (sigma2 - (1.0 - T) * log_moment) + hiai_petz_B(T);
}

}  // namespace rdet::rates
