// lfsp/resample.hpp -- temporal interpolation and decimation of spectral
// grids, frequency by frequency.
//
// Copyright 2026 lfsp authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0

#ifndef LFSP_RESAMPLE_HPP_
#define LFSP_RESAMPLE_HPP_

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include "lfsp/common.hpp"
#include "lfsp/grid.hpp"

namespace lfsp {

enum class InterpWindow { kBlackman };

struct InterpConfig {
  int ratio = 2;      // D, long shift over short shift
  int half_width = 8; // K, filter reach in original samples per side
  InterpWindow window_kind = InterpWindow::kBlackman;

  void validate() const {
    check_arg(ratio >= 1, "InterpConfig: ratio must be >= 1");
    check_arg(half_width >= 4, "InterpConfig: half_width must be >= 4");
  }
};

// Linear-phase interpolation filter.  taps has odd length with the center
// tap exactly 1 and taps at nonzero multiples of `ratio` exactly 0, so the
// original samples pass through untouched.
struct FirFilter {
  std::vector<double> taps;
  int ratio = 1;

  int center() const { return (int(taps.size()) - 1) / 2; }
  int half_width() const { return center() / ratio; }
};

// Inserts ratio-1 zeros after each sample: out[D*i] = seq[i].
inline std::vector<double> zero_insert(const std::vector<double>& seq, int ratio) {
  check_arg(ratio >= 1, "zero_insert: ratio must be >= 1");
  check_arg(!seq.empty(), "zero_insert: sequence must be nonempty");
  std::vector<double> out(seq.size() * std::size_t(ratio), 0.0);
  for (std::size_t i = 0; i < seq.size(); ++i) out[i * std::size_t(ratio)] = seq[i];
  return out;
}

// Blackman-windowed sinc approximation of the ideal gain-D low-pass with
// cutoff pi/D.  Each polyphase branch is normalized to unit DC gain, which
// makes constant sequences interpolate exactly and fixes the total tap sum
// to exactly D.
inline FirFilter design_interp_filter(const InterpConfig& cfg) {
  cfg.validate();
  const int d = cfg.ratio;
  if (d == 1) return FirFilter{{1.0}, 1};

  const int kd = cfg.half_width * d;
  std::vector<double> taps(std::size_t(2 * kd + 1), 0.0);
  for (int m = -kd; m <= kd; ++m) {
    if (m % d == 0) {
      // Exact unit center and exact zero crossings at original samples.
      taps[std::size_t(m + kd)] = (m == 0) ? 1.0 : 0.0;
      continue;
    }
    const double x = std::numbers::pi * double(m) / double(d);
    const double sinc = std::sin(x) / x;
    const double u = double(m) / double(kd);
    const double w = 0.42 + 0.5 * std::cos(std::numbers::pi * u) +
                     0.08 * std::cos(2.0 * std::numbers::pi * u);
    taps[std::size_t(m + kd)] = sinc * w;
  }
  // Branch sums are accumulated in |m|-ascending order so that mirrored
  // branches (r and d-r) add bitwise-identical terms and the normalized
  // taps stay exactly symmetric.
  for (int r = 0; r < d; ++r) {
    double s = (r == 0) ? taps[std::size_t(kd)] : 0.0;
    for (int m = 1; m <= kd; ++m) {
      if (m % d == r) s += taps[std::size_t(kd + m)];
      if ((d - m % d) % d == r) s += taps[std::size_t(kd - m)];
    }
    if (r == 0) continue;  // center 1 plus exact zeros: already unit gain
    for (int m = 1; m <= kd; ++m) {
      if (m % d == r) taps[std::size_t(kd + m)] /= s;
      if ((d - m % d) % d == r) taps[std::size_t(kd - m)] /= s;
    }
  }
  return FirFilter{std::move(taps), d};
}

// Real frequency response of a symmetric filter with group delay removed:
// H(w) = sum_m taps[m] * cos(w*m).
inline double filter_response(const FirFilter& filter, double omega) {
  const int c = filter.center();
  double h = filter.taps[std::size_t(c)];
  for (int m = 1; m <= c; ++m) {
    h += 2.0 * filter.taps[std::size_t(c + m)] * std::cos(omega * double(m));
  }
  return h;
}

namespace detail {

inline long long floor_div(long long a, long long b) {
  return a >= 0 ? a / b : -((-a + b - 1) / b);
}

}  // namespace detail

// Zero-insertion followed by convolution with the interpolation filter,
// compensated for the filter group delay so out[D*i] = seq[i] exactly.
// The input is edge-replicated before filtering.
inline std::vector<double> interpolate_sequence(const std::vector<double>& seq,
                                                const FirFilter& filter) {
  check_arg(!seq.empty(), "interpolate_sequence: sequence must be nonempty");
  const int d = filter.ratio;
  const int kd = filter.center();
  const int k = filter.half_width();
  const long long f_count = (long long)seq.size();

  std::vector<double> out(seq.size() * std::size_t(d), 0.0);
  for (long long v = 0; v < (long long)out.size(); ++v) {
    // Nonzero contributions come from padded samples i (original index i-k,
    // edge-clamped) whose tap index d*i - v lies in [0, 2kd].
    const long long i_first = detail::floor_div(v + d - 1, d);
    const long long i_last = detail::floor_div(v + 2 * kd, d);
    double accum = 0.0;
    for (long long i = i_first; i <= i_last; ++i) {
      const long long tap_index = d * i - v;
      const long long src = std::clamp(i - k, 0LL, f_count - 1);
      accum += filter.taps[std::size_t(tap_index)] * seq[std::size_t(src)];
    }
    out[std::size_t(v)] = accum;
  }
  return out;
}

// Interpolates every bin column of the grid independently; output rows at
// multiples of D reproduce the input rows exactly.
inline RealGrid interpolate_grid(const RealGrid& grid, const InterpConfig& cfg) {
  cfg.validate();
  check_arg(grid.frames >= 1 && grid.bins >= 1, "interpolate_grid: empty grid");
  const FirFilter filter = design_interp_filter(cfg);
  RealGrid out(grid.frames * std::size_t(cfg.ratio), grid.bins);
  std::vector<double> col(grid.frames);
  for (std::size_t n = 0; n < grid.bins; ++n) {
    for (std::size_t f = 0; f < grid.frames; ++f) col[f] = grid.at(f, n);
    const std::vector<double> up = interpolate_sequence(col, filter);
    for (std::size_t f = 0; f < out.frames; ++f) out.at(f, n) = up[f];
  }
  return out;
}

// Keeps every D-th frame (rows 0, D, 2D, ...).
inline RealGrid decimate_grid(const RealGrid& grid, int ratio) {
  check_arg(ratio >= 1, "decimate_grid: ratio must be >= 1");
  check_arg(grid.frames % std::size_t(ratio) == 0,
            "decimate_grid: frame count must be divisible by ratio");
  RealGrid out(grid.frames / std::size_t(ratio), grid.bins);
  for (std::size_t f = 0; f < out.frames; ++f) {
    for (std::size_t n = 0; n < grid.bins; ++n) {
      out.at(f, n) = grid.at(f * std::size_t(ratio), n);
    }
  }
  return out;
}

// Per-bin L1 gap between interpolating log amplitudes directly and the log
// amplitude of the interpolated complex spectrum.  This is the unavoidable
// error of amplitude-domain interpolation when the phase is unknown.
inline std::vector<double> interpolation_error(const LogAmpGrid& log_amp,
                                               const PhaseGrid& phase,
                                               const InterpConfig& cfg,
                                               double amp_floor = 1e-10) {
  cfg.validate();
  check_arg(log_amp.same_shape(phase), "interpolation_error: shape mismatch");
  check_arg(log_amp.frames >= 1 && log_amp.bins >= 1,
            "interpolation_error: empty grid");
  check_arg(amp_floor > 0.0, "interpolation_error: amp_floor must be > 0");

  const FirFilter filter = design_interp_filter(cfg);
  std::vector<double> err(log_amp.bins, 0.0);
  std::vector<double> a_col(log_amp.frames), re(log_amp.frames), im(log_amp.frames);
  for (std::size_t n = 0; n < log_amp.bins; ++n) {
    for (std::size_t f = 0; f < log_amp.frames; ++f) {
      a_col[f] = log_amp.at(f, n);
      const double mag = std::exp(a_col[f]);
      re[f] = mag * std::cos(phase.at(f, n));
      im[f] = mag * std::sin(phase.at(f, n));
    }
    const std::vector<double> ia = interpolate_sequence(a_col, filter);
    const std::vector<double> ire = interpolate_sequence(re, filter);
    const std::vector<double> iim = interpolate_sequence(im, filter);
    double sum = 0.0;
    for (std::size_t f = 0; f < ia.size(); ++f) {
      const double mag = std::max(std::hypot(ire[f], iim[f]), amp_floor);
      sum += std::abs(ia[f] - std::log(mag));
    }
    err[n] = sum;
  }
  return err;
}

}  // namespace lfsp

#endif  // LFSP_RESAMPLE_HPP_
