/*
 * (C) Copyright 2026 rdet developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <array>
#include <cstdint>

namespace rdet {

/// xoshiro256** generator seeded through splitmix64, with the variate
/// generators used by the samplers. A stream has a single owner; it is not
/// safe to draw from one stream on several threads.
class RngStream {
public:
  explicit RngStream(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64();
  /// Uniform on the open interval (0, 1).
  double uniform();
  /// Standard normal, polar Box-Muller.
  double normal();
  /// Gamma(shape, 1), Marsaglia-Tsang; shape < 1 via the shape + 1 boost.
  double gamma(double shape);
  /// log of a Gamma(shape, 1) draw, exact for small shapes where the draw
  /// itself may underflow.
  double log_gamma_variate(double shape);
  /// Beta(a, b) as X / (X + Y).
  double beta(double a, double b);
  /// log of a Beta(a, b) draw, -log1p(Y / X) evaluated in log space.
  double log_beta(double a, double b);
  /// Chi-square with k degrees of freedom, 2 Gamma(k / 2).
  double chi_square(double k);
  double log_chi_square(double k);

private:
  std::uint64_t seed_;
  std::array<std::uint64_t, 4> s_{};
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Stream for replicate `replicate` of an experiment seeded with `base_seed`;
/// a pure function of both arguments.
RngStream derive_stream(std::uint64_t base_seed, std::uint64_t replicate);

}  // namespace rdet
