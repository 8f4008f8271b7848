/*
 * (C) Copyright 2026 rdet developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "rdet/rng.hpp"

#include <cmath>
#include <limits>

#include "rdet/error.hpp"

namespace rdet {
namespace {

constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

inline std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

void check_shape(double shape) {
  if (!(shape > 0.0) || std::isinf(shape))
    raise(ErrorCode::Domain, "gamma shape must be positive and finite");
}

}  // namespace

std::uint64_t mix64(std::uint64_t x) {
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RngStream::RngStream(std::uint64_t seed) : seed_(seed) {
  std::uint64_t x = seed;
  for (auto& word : s_) {
    x += kGoldenGamma;
    word = mix64(x);
  }
}

std::uint64_t RngStream::next_u64() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double RngStream::uniform() {
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double scale = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * scale;
  has_spare_ = true;
  return u * scale;
}

double RngStream::gamma(double shape) {
  check_shape(shape);
  if (shape < 1.0) return gamma(shape + 1.0) * std::pow(uniform(), 1.0 / shape);
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double RngStream::log_gamma_variate(double shape) {
  check_shape(shape);
  if (shape < 1.0) return std::log(gamma(shape + 1.0)) + std::log(uniform()) / shape;
  return std::log(gamma(shape));
}

double RngStream::beta(double a, double b) {
  const double x = gamma(a);
  const double y = gamma(b);
  return x / (x + y);
}

double RngStream::log_beta(double a, double b) {
  for (;;) {
    const double lx = log_gamma_variate(a);
    const double ly = log_gamma_variate(b);
    const double value = -std::log1p(std::exp(ly - lx));
    // A draw of exactly 0 (or an overflowed ratio) is redrawn.
    if (std::isfinite(value) && value < 0.0) return value;
  }
}

double RngStream::chi_square(double k) { return 2.0 * gamma(0.5 * k); }

double RngStream::log_chi_square(double k) {
  return std::log(2.0) + log_gamma_variate(0.5 * k);
}

RngStream derive_stream(std::uint64_t base_seed, std::uint64_t replicate) {
  const std::uint64_t key = mix64(base_seed ^ mix64(replicate * kGoldenGamma + 0x632be59bd9b4e019ULL));
  return RngStream(mix64(key + replicate));
}

}  // namespace rdet
