/*
 * (C) Copyright 2026 rdet developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "rdet/error.hpp"

namespace rdet {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Domain: return "domain error";
    case ErrorCode::DivergentCgf: return "divergent cumulant generating function";
    case ErrorCode::Unsupported: return "unsupported";
    case ErrorCode::Numeric: return "numeric failure";
    case ErrorCode::RankDeficient: return "rank deficient";
    case ErrorCode::DegenerateSpectrum: return "degenerate spectrum";
    case ErrorCode::InsufficientData: return "insufficient data";
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::Io: return "i/o failure";
  }
  return "unknown error";
}

void raise(ErrorCode code, const std::string& what) {
  throw Error(code, std::string(to_string(code)) + ": " + what);
}

}  // namespace rdet
