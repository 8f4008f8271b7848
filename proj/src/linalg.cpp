/*
 * (C) Copyright 2026 rdet developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "rdet/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "rdet/error.hpp"

namespace rdet {
namespace {

constexpr int kMaxSweeps = 100;
constexpr double kJacobiTol = 1e-12;
constexpr double kRankTol = 1e-12;

double dot(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

}  // namespace

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix transpose_times(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) raise(ErrorCode::InvalidArgument, "transpose_times: row mismatch");
  Matrix out(a.cols(), b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j)
    for (std::size_t i = 0; i < a.cols(); ++i) out(i, j) = dot(a.col(i), b.col(j), a.rows());
  return out;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) raise(ErrorCode::InvalidArgument, "multiply: shape mismatch");
  Matrix out(a.rows(), b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double bkj = b(k, j);
      const double* ak = a.col(k);
      double* oj = out.col(j);
      for (std::size_t i = 0; i < a.rows(); ++i) oj[i] += ak[i] * bkj;
    }
  return out;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    raise(ErrorCode::InvalidArgument, "max_abs_diff: shape mismatch");
  double m = 0.0;
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.rows(); ++i) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

QrFactorization gram_schmidt_qr(const Matrix& b) {
  const std::size_t n = b.rows();
  const std::size_t r = b.cols();
  if (r == 0 || r > n) raise(ErrorCode::InvalidArgument, "gram_schmidt_qr requires 1 <= r <= n");
  QrFactorization out{b, Matrix(r, r), b};
  Matrix& q = out.q;
  Matrix& R = out.r_upper;
  const double floor = kRankTol * std::sqrt(static_cast<double>(n));
  for (std::size_t j = 0; j < r; ++j) {
    double* qj = q.col(j);
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < j; ++k) {
        const double* qk = q.col(k);
        const double c = dot(qk, qj, n);
        R(k, j) += c;
        for (std::size_t i = 0; i < n; ++i) qj[i] -= c * qk[i];
      }
    }
    const double norm = std::sqrt(dot(qj, qj, n));
    if (!(norm >= floor))
      raise(ErrorCode::RankDeficient, "gram_schmidt_qr: column " + std::to_string(j) +
                                          " is numerically dependent");
    R(j, j) = norm;
    for (std::size_t i = 0; i < n; ++i) qj[i] /= norm;
  }
  return out;
}

EigenSpectrum jacobi_eigenvalues(const Matrix& symmetric) {
  const std::size_t n = symmetric.rows();
  if (n != symmetric.cols()) raise(ErrorCode::InvalidArgument, "jacobi_eigenvalues: matrix not square");
  Matrix a = symmetric;
  double total = 0.0;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::isfinite(a(i, j))) raise(ErrorCode::Numeric, "jacobi_eigenvalues: non-finite entry");
      total += a(i, j) * a(i, j);
    }
  const double target = kJacobiTol * std::sqrt(total);
  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < j; ++i) s += 2.0 * a(i, j) * a(i, j);
    return std::sqrt(s);
  };
  int sweep = 0;
  while (off_norm() >= target) {
    if (++sweep > kMaxSweeps) raise(ErrorCode::Numeric, "jacobi_eigenvalues: no convergence");
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double app = a(p, p);
        const double aqq = a(q, q);
        // Rotation annihilating a(p, q): t = tan(angle), smaller root.
        const double tau = (aqq - app) / (2.0 * apq);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        double* cp = a.col(p);
        double* cq = a.col(q);
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = cp[k];
          const double akq = cq[k];
          cp[k] = c * akp - s * akq;
          cq[k] = s * akp + c * akq;
        }
        // Rows p and q of the rotated matrix mirror its columns, except for
        // the 2 x 2 block.
        for (std::size_t k = 0; k < n; ++k) {
          a(p, k) = cp[k];
          a(q, k) = cq[k];
        }
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
      }
    }
  }
  EigenSpectrum out;
  out.eigenvalues.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.eigenvalues[i] = a(i, i);
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end());
  return out;
}

}  // namespace rdet
