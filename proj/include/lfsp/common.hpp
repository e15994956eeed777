// lfsp/common.hpp -- error types and small shared helpers.
//
// Copyright 2026 lfsp authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0

#ifndef LFSP_COMMON_HPP_
#define LFSP_COMMON_HPP_

#include <cmath>
#include <stdexcept>
#include <string>

namespace lfsp {

// Malformed persisted data (checkpoints, grid files, WAV).  The kind keeps
// magic, version and truncation failures distinguishable.
class FormatError : public std::runtime_error {
 public:
  enum class Kind { kBadMagic, kBadVersion, kTruncated, kBadHeader, kUnsupported };

  FormatError(Kind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Numerically degenerate situation (zero overlap-add normalization,
// non-finite values where finite ones are required).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void check_arg(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace lfsp

#endif  // LFSP_COMMON_HPP_
