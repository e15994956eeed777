// lfsp/losses.hpp -- anti-wrapping phase losses: instantaneous phase, group
// delay (frequency difference) and instantaneous angular frequency (time
// difference).
//
// Copyright 2026 lfsp authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0

#ifndef LFSP_LOSSES_HPP_
#define LFSP_LOSSES_HPP_

#include <cmath>
#include <cstddef>
#include <numbers>

#include "lfsp/common.hpp"
#include "lfsp/grid.hpp"

namespace lfsp {

struct LossWeights {
  double w_ip = 1.0;
  double w_gd = 1.0;
  double w_iaf = 1.0;

  void validate() const {
    check_arg(w_ip >= 0.0 && w_gd >= 0.0 && w_iaf >= 0.0,
              "LossWeights: weights must be nonnegative");
    check_arg(w_ip > 0.0 || w_gd > 0.0 || w_iaf > 0.0,
              "LossWeights: at least one weight must be positive");
  }
};

// Linear anti-wrapping activation: distance from x to the nearest multiple
// of 2*pi, in [0, pi].  Invariant to 2*pi jumps of its argument.
inline double anti_wrap(double x) {
  const double two_pi = 2.0 * std::numbers::pi;
  return std::abs(x - two_pi * std::round(x / two_pi));
}

// Mean anti-wrapped elementwise error.
inline double ip_loss(const PhaseGrid& predicted, const PhaseGrid& target) {
  check_arg(predicted.same_shape(target), "ip_loss: shape mismatch");
  check_arg(predicted.size() > 0, "ip_loss: empty grid");
  double sum = 0.0;
  for (std::size_t j = 0; j < predicted.size(); ++j) {
    sum += anti_wrap(predicted.data[j] - target.data[j]);
  }
  return sum / double(predicted.size());
}

// Mean anti-wrapped error of the frequency-axis difference.
inline double gd_loss(const PhaseGrid& predicted, const PhaseGrid& target) {
  check_arg(predicted.same_shape(target), "gd_loss: shape mismatch");
  check_arg(predicted.bins >= 2, "gd_loss: needs at least 2 bins");
  double sum = 0.0;
  for (std::size_t f = 0; f < predicted.frames; ++f) {
    for (std::size_t n = 0; n + 1 < predicted.bins; ++n) {
      const double dp = predicted.at(f, n + 1) - predicted.at(f, n);
      const double dt = target.at(f, n + 1) - target.at(f, n);
      sum += anti_wrap(dp - dt);
    }
  }
  return sum / double(predicted.frames * (predicted.bins - 1));
}

// Mean anti-wrapped error of the time-axis difference.
inline double iaf_loss(const PhaseGrid& predicted, const PhaseGrid& target) {
  check_arg(predicted.same_shape(target), "iaf_loss: shape mismatch");
  check_arg(predicted.frames >= 2, "iaf_loss: needs at least 2 frames");
  double sum = 0.0;
  for (std::size_t f = 0; f + 1 < predicted.frames; ++f) {
    for (std::size_t n = 0; n < predicted.bins; ++n) {
      const double dp = predicted.at(f + 1, n) - predicted.at(f, n);
      const double dt = target.at(f + 1, n) - target.at(f, n);
      sum += anti_wrap(dp - dt);
    }
  }
  return sum / double((predicted.frames - 1) * predicted.bins);
}

}  // namespace lfsp

#endif  // LFSP_LOSSES_HPP_
