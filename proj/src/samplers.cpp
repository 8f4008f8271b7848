/*
 * (C) Copyright 2026 rdet developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "rdet/samplers.hpp"

#include <cmath>

#include "rdet/error.hpp"

namespace rdet {
namespace {

constexpr std::size_t kMaxOracleSize = 1000;

void check_n(std::int64_t n) {
  if (n < 1) raise(ErrorCode::Domain, "sampler requires n >= 1");
}

}  // namespace

double ProcessPath::at_time(double t) const {
  if (!(t >= 0.0 && t <= 1.0)) raise(ErrorCode::Domain, "path time must lie in [0, 1]");
  auto r = static_cast<std::size_t>(std::floor(static_cast<double>(n) * t));
  if (r >= values.size()) r = values.size() - 1;
  return values[r];
}

ProcessPath sample_path_prefix(EnsembleKind kind, std::int64_t n, std::int64_t r_max,
                               RngStream& stream) {
  check_n(n);
  if (r_max < 0 || r_max > n) raise(ErrorCode::Domain, "sample_path_prefix requires 0 <= r_max <= n");
  ProcessPath path{kind, n, std::vector<double>(static_cast<std::size_t>(r_max) + 1, 0.0)};
  const double nd = static_cast<double>(n);
  const double log_n = std::log(nd);
  double acc = 0.0;
  switch (kind) {
    case EnsembleKind::Gram:
      for (std::int64_t j = 2; j <= r_max; ++j) {
        acc += stream.log_beta(0.5 * static_cast<double>(n - j + 1), 0.5 * static_cast<double>(j - 1));
        path.values[static_cast<std::size_t>(j)] = acc;
      }
      break;
    case EnsembleKind::Wishart:
      for (std::int64_t j = 1; j <= r_max; ++j) {
        acc += stream.log_chi_square(static_cast<double>(n - j + 1)) - log_n;
        path.values[static_cast<std::size_t>(j)] = acc;
      }
      break;
    case EnsembleKind::Radial:
      for (std::int64_t j = 1; j <= r_max; ++j) {
        acc += stream.log_chi_square(nd) - log_n;
        path.values[static_cast<std::size_t>(j)] = acc;
      }
      break;
  }
  return path;
}

ProcessPath sample_path(EnsembleKind kind, std::int64_t n, RngStream& stream) {
  check_n(n);
  return sample_path_prefix(kind, n, n, stream);
}

ProcessPath sample_gram_path(std::int64_t n, RngStream& stream) {
  return sample_path(EnsembleKind::Gram, n, stream);
}

ProcessPath sample_wishart_path(std::int64_t n, RngStream& stream) {
  return sample_path(EnsembleKind::Wishart, n, stream);
}

ProcessPath sample_radial_path(std::int64_t n, RngStream& stream) {
  return sample_path(EnsembleKind::Radial, n, stream);
}

ProcessPath combine_wishart(const ProcessPath& gram, const ProcessPath& radial) {
  if (gram.kind != EnsembleKind::Gram || radial.kind != EnsembleKind::Radial ||
      gram.n != radial.n || gram.values.size() != radial.values.size())
    raise(ErrorCode::InvalidArgument, "combine_wishart needs a Gram and a Radial path of equal n");
  ProcessPath out{EnsembleKind::Wishart, gram.n, gram.values};
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += radial.values[i];
  return out;
}

Matrix gaussian_matrix(std::size_t n, std::size_t r, RngStream& stream) {
  Matrix b(n, r);
  for (std::size_t j = 0; j < r; ++j) {
    double* c = b.col(j);
    for (std::size_t i = 0; i < n; ++i) c[i] = stream.normal();
  }
  return b;
}

DenseOracle dense_oracle_of(const Matrix& b, bool with_spectrum) {
  const std::size_t n = b.rows();
  const std::size_t r = b.cols();
  if (r < 1 || r > n || n > kMaxOracleSize)
    raise(ErrorCode::Domain, "dense_oracle requires 1 <= r <= n <= 1000");
  const double log_n = std::log(static_cast<double>(n));
  const auto qr = gram_schmidt_qr(b);
  DenseOracle out;
  double log_det = 0.0;
  double log_norms = 0.0;
  for (std::size_t j = 0; j < r; ++j) {
    const double rjj = qr.r_upper(j, j);
    log_det += 2.0 * std::log(rjj);
    double norm2 = 0.0;
    const double* c = b.col(j);
    for (std::size_t i = 0; i < n; ++i) norm2 += c[i] * c[i];
    log_norms += std::log(norm2);
  }
  out.log_det_qr = log_det - static_cast<double>(r) * log_n;
  out.log_hadamard = log_det - log_norms;
  out.hadamard_ratio = std::exp(out.log_hadamard);
  out.log_radial = log_norms - static_cast<double>(r) * log_n;
  if (with_spectrum) {
    Matrix x = transpose_times(b, b);
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t i = 0; i < r; ++i) x(i, j) *= inv_n;
    out.spectrum = jacobi_eigenvalues(x);
    double s = 0.0;
    for (double lambda : out.spectrum.eigenvalues) {
      if (!(lambda > 0.0))
        raise(ErrorCode::DegenerateSpectrum, "dense_oracle: nonpositive eigenvalue");
      s += std::log(lambda);
    }
    out.log_det_eig = s;
  } else {
    out.log_det_eig = std::nan("");
  }
  return out;
}

DenseOracle dense_oracle(std::size_t n, std::size_t r, RngStream& stream, bool with_spectrum) {
  if (r < 1 || r > n || n > kMaxOracleSize)
    raise(ErrorCode::Domain, "dense_oracle requires 1 <= r <= n <= 1000");
  return dense_oracle_of(gaussian_matrix(n, r, stream), with_spectrum);
}

double esd_log_moment(const EigenSpectrum& spectrum) {
  if (spectrum.eigenvalues.empty())
    raise(ErrorCode::DegenerateSpectrum, "esd_log_moment: empty spectrum");
  double s = 0.0;
  for (double lambda : spectrum.eigenvalues) {
    if (!(lambda > 0.0)) raise(ErrorCode::DegenerateSpectrum, "esd_log_moment: nonpositive eigenvalue");
    s += std::log(lambda);
  }
  return s / static_cast<double>(spectrum.eigenvalues.size());
}

SdeCoefficients sde_coefficients(EnsembleKind kind, double t) {
  if (!(t >= 0.0 && t < 1.0)) raise(ErrorCode::Domain, "SDE coefficients require t in [0, 1)");
  switch (kind) {
    case EnsembleKind::Gram: return {(1.0 - 2.0 * t) / (2.0 * (1.0 - t)), 2.0 * t / (1.0 - t)};
    case EnsembleKind::Wishart: return {-1.0 / (2.0 * (1.0 - t)), 2.0 / (1.0 - t)};
    case EnsembleKind::Radial:
      raise(ErrorCode::Unsupported, "no SDE sampler for the radial process");
  }
  raise(ErrorCode::InvalidArgument, "unknown ensemble kind");
}

GridPath sample_sde_path(EnsembleKind kind, double t_max, int steps, RngStream& stream,
                         bool with_noise) {
  if (kind == EnsembleKind::Radial)
    raise(ErrorCode::Unsupported, "sample_sde_path is defined for Gram and Wishart");
  if (!(t_max > 0.0 && t_max <= 0.95))
    raise(ErrorCode::Domain, "sample_sde_path requires t_max in (0, 0.95]");
  if (steps < 100) raise(ErrorCode::InvalidArgument, "sample_sde_path requires steps >= 100");
  GridPath path;
  path.t.resize(static_cast<std::size_t>(steps) + 1);
  path.values.resize(static_cast<std::size_t>(steps) + 1);
  const double dt = t_max / steps;
  const double sqrt_dt = std::sqrt(dt);
  double y = 0.0;
  path.t[0] = 0.0;
  path.values[0] = 0.0;
  for (int k = 0; k < steps; ++k) {
    const double t = dt * k;
    const auto coef = sde_coefficients(kind, t);
    y += coef.drift * dt;
    if (with_noise) y += std::sqrt(coef.diffusion_sq) * sqrt_dt * stream.normal();
    path.t[static_cast<std::size_t>(k) + 1] = dt * (k + 1);
    path.values[static_cast<std::size_t>(k) + 1] = y;
  }
  path.t.back() = t_max;
  return path;
}

}  // namespace rdet
