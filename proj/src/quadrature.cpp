/*
 * (C) Copyright 2026 rdet developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "rdet/quadrature.hpp"

#include <array>
#include <cmath>
#include <queue>
#include <vector>

#include "rdet/error.hpp"

namespace rdet::quad {
namespace {

// Kronrod nodes (positive half, descending) and weights; Gauss weights for the
// 7-point rule sit on the odd Kronrod nodes.
constexpr std::array<double, 8> kXk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gk15(const Integrand& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double kron = fc * kWk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXk[j];
    const double s = f(c - dx) + f(c + dx);
    kron += kWk[j] * s;
    if (j % 2 == 1) gauss += kWg[j / 2] * s;
  }
  const double err = std::abs((kron - gauss) * h);
  return {a, b, kron * h, err};
}

}  // namespace

Result integrate(const Integrand& f, double a, double b, Options opts) {
  if (!(b >= a)) raise(ErrorCode::Domain, "integrate requires a <= b");
  if (a == b) return {};
  std::priority_queue<Segment> heap;
  Segment first = gk15(f, a, b);
  heap.push(first);
  double total = first.value;
  double total_err = first.error;
  int intervals = 1;
  while (intervals < opts.max_intervals) {
    if (total_err <= std::max(opts.abs_tol, opts.rel_tol * std::abs(total)))
      break;
    Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      heap.push(worst);
      break;
    }
    Segment left = gk15(f, worst.a, mid);
    Segment right = gk15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++intervals;
  }
  // Re-sum to shed accumulated cancellation from the running updates.
  double value = 0.0, err = 0.0;
  while (!heap.empty()) {
    value += heap.top().value;
    err += heap.top().error;
    heap.pop();
  }
  if (!std::isfinite(value))
    raise(ErrorCode::Numeric, "integrand produced a non-finite value");
  return {value, err, intervals};
}

Result integrate_to_infinity(const Integrand& f, double a, Options opts) {
  return integrate(
      [&](double u) {
        const double one_minus = 1.0 - u;
        const double x = a + u / one_minus;
        return f(x) / (one_minus * one_minus);
      },
      0.0, 1.0, opts);
}

Result integrate_sqrt_edges(const Integrand& f, double a, double b,
                            Options opts) {
  if (!(b > a)) raise(ErrorCode::Domain, "integrate_sqrt_edges requires a < b");
  const double mid = 0.5 * (a + b);
  const double half = std::sqrt(mid - a);
  Result lo = integrate([&](double u) { return 2.0 * u * f(a + u * u); }, 0.0,
                        half, opts);
  Result hi = integrate([&](double u) { return 2.0 * u * f(b - u * u); }, 0.0,
                        half, opts);
  return {lo.value + hi.value, lo.error + hi.error, lo.intervals + hi.intervals};
}

}  // namespace rdet::quad
