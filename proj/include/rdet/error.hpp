/*
 * (C) Copyright 2026 rdet developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace rdet {

enum class ErrorCode {
  Domain = 1,
  DivergentCgf,
  Unsupported,
  Numeric,
  RankDeficient,
  DegenerateSpectrum,
  InsufficientData,
  InvalidArgument,
  Io,
};

const char* to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above; the C
/// API maps them one-to-one onto rdet_status values.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] void raise(ErrorCode code, const std::string& what);

inline void require(bool ok, ErrorCode code, const char* what) {
  if (!ok) raise(code, what);
}

}  // namespace rdet
