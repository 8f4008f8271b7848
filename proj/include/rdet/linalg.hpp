/*
 * (C) Copyright 2026 rdet developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

// Small dense kernels for the desk-scale oracle: column-major matrices,
// modified Gram-Schmidt QR and a cyclic Jacobi eigensolver.

#include <cstddef>
#include <vector>

namespace rdet {

class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[j * rows_ + i]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[j * rows_ + i]; }
  double* col(std::size_t j) { return data_.data() + j * rows_; }
  const double* col(std::size_t j) const { return data_.data() + j * rows_; }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// A^T B.
Matrix transpose_times(const Matrix& a, const Matrix& b);
/// A B.
Matrix multiply(const Matrix& a, const Matrix& b);
/// max_ij |A_ij - B_ij|.
double max_abs_diff(const Matrix& a, const Matrix& b);

struct QrFactorization {
  Matrix q;        ///< n x r with orthonormal columns
  Matrix r_upper;  ///< r x r upper triangular, positive diagonal
  Matrix source;   ///< the factored n x r input
};

/// Modified Gram-Schmidt with one reorthogonalization pass. Throws
/// RankDeficient when a column norm falls below 1e-12 sqrt(n) after
/// orthogonalization.
QrFactorization gram_schmidt_qr(const Matrix& b);

struct EigenSpectrum {
  std::vector<double> eigenvalues;  ///< nondecreasing
};

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations; converged
/// when the off-diagonal Frobenius mass is below 1e-12 ||A||_F.
EigenSpectrum jacobi_eigenvalues(const Matrix& symmetric);

}  // namespace rdet
