// lfsp/dsp.hpp -- STFT analysis/synthesis and phase/amplitude features.
//
// Copyright 2026 lfsp authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0

#ifndef LFSP_DSP_HPP_
#define LFSP_DSP_HPP_

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include "lfsp/common.hpp"
#include "lfsp/fft.hpp"
#include "lfsp/grid.hpp"

namespace lfsp {

enum class WindowKind { kHannPeriodic };

struct StftConfig {
  int sample_rate = 16000;
  int frame_length = 320;  // 20 ms at 16 kHz
  int frame_shift = 160;   // 10 ms, the reconstruction upper bound for 20 ms frames
  int fft_size = 1024;
  WindowKind window_kind = WindowKind::kHannPeriodic;

  int bins() const { return fft_size / 2 + 1; }

  void validate() const {
    check_arg(sample_rate >= 1, "StftConfig: sample_rate must be >= 1");
    check_arg(frame_length >= 2, "StftConfig: frame_length must be >= 2");
    check_arg(frame_shift >= 1, "StftConfig: frame_shift must be >= 1");
    check_arg(frame_shift <= frame_length,
              "StftConfig: frame_shift must be <= frame_length");
    check_arg(fft_size >= frame_length, "StftConfig: fft_size must be >= frame_length");
    check_arg(is_power_of_two(std::size_t(fft_size)),
              "StftConfig: fft_size must be a power of two");
  }

  StftConfig with_shift(int shift) const {
    StftConfig c = *this;
    c.frame_shift = shift;
    return c;
  }
};

struct Waveform {
  std::vector<double> samples;
  int sample_rate = 16000;

  double duration_seconds() const {
    return double(samples.size()) / double(sample_rate);
  }
};

// Periodic Hann window: w[n] = 0.5 - 0.5*cos(2*pi*n/length).
inline std::vector<double> make_window(int length) {
  check_arg(length >= 2, "make_window: length must be >= 2");
  std::vector<double> w(static_cast<std::size_t>(length));
  for (int n = 0; n < length; ++n) {
    w[std::size_t(n)] =
        0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * double(n) / double(length));
  }
  return w;
}

// Wraps theta into the principal interval (-pi, pi].
inline double principal_phase(double theta) {
  check_arg(std::isfinite(theta), "principal_phase: input must be finite");
  double r = std::remainder(theta, 2.0 * std::numbers::pi);
  if (r <= -std::numbers::pi) r += 2.0 * std::numbers::pi;
  return r;
}

namespace detail {

// Reflect (mirror without edge duplication) an arbitrary index into [0, n).
inline std::size_t reflect_index(long long i, long long n) {
  if (n == 1) return 0;
  const long long period = 2 * (n - 1);
  long long m = i % period;
  if (m < 0) m += period;
  if (m >= n) m = period - m;
  return std::size_t(m);
}

}  // namespace detail

// Centered STFT: the signal is reflect-padded by frame_length/2 on both ends
// so frame f is centered on sample f*frame_shift.  Frames are windowed,
// zero-padded to fft_size, and reduced to the one-sided spectrum.
// Frame count = floor(len/frame_shift) + 1.
inline ComplexGrid stft(const Waveform& x, const StftConfig& cfg) {
  cfg.validate();
  check_arg(!x.samples.empty(), "stft: waveform must be nonempty");

  const long long len = (long long)x.samples.size();
  const long long pad = cfg.frame_length / 2;
  const std::size_t frames = std::size_t(len / cfg.frame_shift) + 1;
  const std::size_t nbins = std::size_t(cfg.bins());
  const std::vector<double> window = make_window(cfg.frame_length);

  ComplexGrid out(frames, nbins);
  std::vector<std::complex<double>> buf(std::size_t(cfg.fft_size));
  for (std::size_t f = 0; f < frames; ++f) {
    const long long start = (long long)f * cfg.frame_shift - pad;
    for (int n = 0; n < cfg.frame_length; ++n) {
      const std::size_t src = detail::reflect_index(start + n, len);
      buf[std::size_t(n)] = window[std::size_t(n)] * x.samples[src];
    }
    for (int n = cfg.frame_length; n < cfg.fft_size; ++n) buf[std::size_t(n)] = 0.0;
    fft_inplace(buf, false);
    for (std::size_t k = 0; k < nbins; ++k) out.at(f, k) = buf[k];
  }
  return out;
}

// Weighted overlap-add inverse STFT with synthesis window equal to the
// analysis window and per-sample normalization by the summed squared window.
// Output is trimmed to length_hint samples.
inline Waveform istft(const ComplexGrid& grid, const StftConfig& cfg,
                      std::size_t length_hint) {
  cfg.validate();
  check_arg(grid.bins == std::size_t(cfg.bins()),
            "istft: grid bin count does not match fft_size/2+1");
  check_arg(grid.frames >= 1, "istft: grid must contain at least one frame");

  const long long pad = cfg.frame_length / 2;
  const std::size_t frames = grid.frames;
  const std::size_t nfft = std::size_t(cfg.fft_size);
  // Sample coordinates covered by the frames span [-pad, span - pad).
  const long long span = (long long)(frames - 1) * cfg.frame_shift + cfg.frame_length;
  const std::vector<double> window = make_window(cfg.frame_length);

  std::vector<double> acc(std::size_t(span), 0.0);
  std::vector<double> den(std::size_t(span), 0.0);
  std::vector<std::complex<double>> buf(nfft);
  for (std::size_t f = 0; f < frames; ++f) {
    buf[0] = grid.at(f, 0);
    for (std::size_t k = 1; k + 1 < grid.bins; ++k) {
      buf[k] = grid.at(f, k);
      buf[nfft - k] = std::conj(grid.at(f, k));
    }
    buf[nfft / 2] = grid.at(f, grid.bins - 1);
    fft_inplace(buf, true);

    const std::size_t base = f * std::size_t(cfg.frame_shift);
    for (int n = 0; n < cfg.frame_length; ++n) {
      const double w = window[std::size_t(n)];
      acc[base + std::size_t(n)] += w * buf[std::size_t(n)].real();
      den[base + std::size_t(n)] += w * w;
    }
  }

  Waveform y;
  y.sample_rate = cfg.sample_rate;
  y.samples.resize(length_hint);
  for (std::size_t t = 0; t < length_hint; ++t) {
    const long long j = (long long)t + pad;
    if (j < 0 || j >= span || den[std::size_t(j)] < 1e-10) {
      throw NumericalError(
          "istft: zero overlap-add normalization at a requested sample");
    }
    y.samples[t] = acc[std::size_t(j)] / den[std::size_t(j)];
  }
  return y;
}

// Elementwise log(max(|c|, amp_floor)).
inline LogAmpGrid log_amplitude(const ComplexGrid& grid, double amp_floor = 1e-10) {
  check_arg(amp_floor > 0.0, "log_amplitude: amp_floor must be > 0");
  LogAmpGrid out(grid.frames, grid.bins);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out.data[i] = std::log(std::max(std::abs(grid.data[i]), amp_floor));
  }
  return out;
}

namespace detail {

// atan2 with the result forced into (-pi, pi]; the angle of exact zero is 0.
inline double angle_principal(double im, double re) {
  double p = std::atan2(im, re);
  if (p <= -std::numbers::pi) p = std::numbers::pi;
  return p;
}

}  // namespace detail

// Elementwise four-quadrant angle in (-pi, pi].
inline PhaseGrid phase_of(const ComplexGrid& grid) {
  PhaseGrid out(grid.frames, grid.bins);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out.data[i] = detail::angle_principal(grid.data[i].imag(), grid.data[i].real());
  }
  return out;
}

// exp(A) * exp(i*P), the complex grid with log-amplitudes A and phases P.
inline ComplexGrid polar_grid(const LogAmpGrid& log_amp, const PhaseGrid& phase) {
  check_arg(log_amp.same_shape(phase), "polar_grid: shape mismatch");
  ComplexGrid out(log_amp.frames, log_amp.bins);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out.data[i] = std::polar(std::exp(log_amp.data[i]), phase.data[i]);
  }
  return out;
}

}  // namespace lfsp

#endif  // LFSP_DSP_HPP_
