/*
 * (C) Copyright 2026 rdet developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

// O(n) samplers of the log-determinant processes r -> path(n, r) from the
// Bartlett decomposition, a dense Gaussian-matrix oracle, and Euler-Maruyama
// paths of the limiting diffusions.

#include <cstdint>
#include <vector>

#include "rdet/linalg.hpp"
#include "rdet/rng.hpp"
#include "rdet/theory.hpp"

namespace rdet {

/// One realization on r = 0..n; the value at continuous time t is
/// values[floor(n t)].
struct ProcessPath {
  EnsembleKind kind = EnsembleKind::Gram;
  std::int64_t n = 0;
  std::vector<double> values;

  double at_time(double t) const;
};

/// Cumulative sums of log beta((n-j+1)/2, (j-1)/2), j = 2..n.
ProcessPath sample_gram_path(std::int64_t n, RngStream& stream);
/// Cumulative sums of log(chi2_{n-j+1} / n), j = 1..n.
ProcessPath sample_wishart_path(std::int64_t n, RngStream& stream);
/// Cumulative sums of log(chi2_n / n), k = 1..n.
ProcessPath sample_radial_path(std::int64_t n, RngStream& stream);
ProcessPath sample_path(EnsembleKind kind, std::int64_t n, RngStream& stream);
/// The first r_max + 1 values of a path of size n (0 <= r_max <= n); they
/// coincide with those of sample_path drawn from an equal stream.
ProcessPath sample_path_prefix(EnsembleKind kind, std::int64_t n, std::int64_t r_max,
                               RngStream& stream);

/// Entry-wise sum of a Gram and a Radial path of the same n, a Wishart path.
ProcessPath combine_wishart(const ProcessPath& gram, const ProcessPath& radial);

/// n x r matrix of independent standard normals, filled column by column.
Matrix gaussian_matrix(std::size_t n, std::size_t r, RngStream& stream);

struct DenseOracle {
  double log_det_qr = 0.0;       ///< sum_j log(R_jj^2 / n)
  double log_det_eig = 0.0;      ///< sum_k log(lambda_k) of B'B / n
  double log_hadamard = 0.0;     ///< log det(B'B) - sum_j log ||b_j||^2
  double hadamard_ratio = 0.0;   ///< exp(log_hadamard)
  double log_radial = 0.0;       ///< sum_j log(||b_j||^2 / n)
  EigenSpectrum spectrum;        ///< of B'B / n; empty when not requested
};

/// Fills an n x r Gaussian B and evaluates its normalized log-determinant
/// two ways, its Hadamard ratio and (optionally) its spectrum.
/// Requires 1 <= r <= n <= 1000.
DenseOracle dense_oracle(std::size_t n, std::size_t r, RngStream& stream,
                         bool with_spectrum = true);

/// Same quantities for a given matrix.
DenseOracle dense_oracle_of(const Matrix& b, bool with_spectrum = true);

/// Mean of log eigenvalues; DegenerateSpectrum on a nonpositive eigenvalue.
double esd_log_moment(const EigenSpectrum& spectrum);

struct GridPath {
  std::vector<double> t;
  std::vector<double> values;
};

/// Euler-Maruyama on `steps` uniform steps of [0, t_max] for the limiting
/// fluctuation diffusion of Gram or Wishart, started at 0. With
/// with_noise = false the drift ODE is integrated alone.
/// Requires steps >= 100 and t_max in (0, 0.95].
GridPath sample_sde_path(EnsembleKind kind, double t_max, int steps, RngStream& stream,
                         bool with_noise = true);

/// Drift and squared diffusion coefficient of the limiting diffusion at t.
struct SdeCoefficients {
  double drift;
  double diffusion_sq;
};
SdeCoefficients sde_coefficients(EnsembleKind kind, double t);

}  // namespace rdet
