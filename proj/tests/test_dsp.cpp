// Tests for lfsp/dsp.hpp: windowing, STFT/ISTFT, phase wrapping and
// feature extraction.
//
// Copyright 2026 lfsp authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0

#include "lfsp/dsp.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <complex>
#include <numbers>

#include "test_helpers.hpp"

using namespace lfsp;
using lfsp_test::noise_tone_waveform;
using lfsp_test::wrap_distance;

namespace {

constexpr double kPi = std::numbers::pi;

// Straight-line oracle: gather the reflect-padded, windowed frame and
// evaluate the DFT directly, independent of the FFT path.
std::vector<double> oracle_frame(const Waveform& x, const StftConfig& cfg,
                                 std::size_t frame) {
  const long long len = (long long)x.samples.size();
  const long long pad = cfg.frame_length / 2;
  const std::vector<double> w = make_window(cfg.frame_length);
  std::vector<double> out(std::size_t(cfg.fft_size), 0.0);
  for (int n = 0; n < cfg.frame_length; ++n) {
    long long idx = (long long)frame * cfg.frame_shift - pad + n;
    // mirror without repeating the edge sample
    while (idx < 0 || idx >= len) {
      if (idx < 0) idx = -idx;
      if (idx >= len) idx = 2 * (len - 1) - idx;
    }
    out[std::size_t(n)] = w[std::size_t(n)] * x.samples[std::size_t(idx)];
  }
  return out;
}

std::vector<std::complex<double>> oracle_dft(const std::vector<double>& frame,
                                             std::size_t nbins) {
  std::vector<std::complex<double>> spec(nbins);
  const double n = double(frame.size());
  for (std::size_t k = 0; k < nbins; ++k) {
    std::complex<double> acc = 0.0;
    for (std::size_t t = 0; t < frame.size(); ++t) {
      const double ang = -2.0 * kPi * double(k) * double(t) / n;
      acc += frame[t] * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    spec[k] = acc;
  }
  return spec;
}

}  // namespace

TEST(MakeWindow, ClosedFormValues) {
  const std::vector<double> w4 = make_window(4);
  ASSERT_EQ(w4.size(), 4u);
  EXPECT_NEAR(w4[0], 0.0, 1e-15);
  EXPECT_NEAR(w4[1], 0.5, 1e-15);
  EXPECT_NEAR(w4[2], 1.0, 1e-15);
  EXPECT_NEAR(w4[3], 0.5, 1e-15);

  const std::vector<double> w2 = make_window(2);
  EXPECT_NEAR(w2[0], 0.0, 1e-15);
  EXPECT_NEAR(w2[1], 1.0, 1e-15);
}

TEST(MakeWindow, SumIsHalfLength) {
  const std::vector<double> w = make_window(320);
  double sum = 0.0;
  for (double v : w) sum += v;
  EXPECT_NEAR(sum, 160.0, 1e-9);
}

TEST(MakeWindow, RejectsTooShort) {
  EXPECT_THROW(make_window(1), std::invalid_argument);
  EXPECT_THROW(make_window(0), std::invalid_argument);
}

TEST(PrincipalPhase, Examples) {
  EXPECT_EQ(principal_phase(0.0), 0.0);
  EXPECT_DOUBLE_EQ(principal_phase(3.0 * kPi), kPi);
  EXPECT_DOUBLE_EQ(principal_phase(-kPi), kPi);
  EXPECT_DOUBLE_EQ(principal_phase(kPi), kPi);
  EXPECT_NEAR(principal_phase(kPi + 0.25), -kPi + 0.25, 1e-12);
}

TEST(PrincipalPhase, RejectsNonFinite) {
  EXPECT_THROW(principal_phase(std::numeric_limits<double>::infinity()),
               std::invalid_argument);
  EXPECT_THROW(principal_phase(std::numeric_limits<double>::quiet_NaN()),
               std::invalid_argument);
}

TEST(PrincipalPhase, WrapInvarianceOverThousandPeriods) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const double theta = lfsp_test::urand_in(rng, -kPi, kPi);
    const int k = int(lfsp_test::urand_in(rng, -1000.0, 1000.0));
    const double shifted = theta + 2.0 * kPi * double(k);
    EXPECT_LE(wrap_distance(principal_phase(shifted), principal_phase(theta)), 1e-9);
    EXPECT_GT(principal_phase(shifted), -kPi);
    EXPECT_LE(principal_phase(shifted), kPi);
  }
}

TEST(Stft, ZeroSignalGivesZeroGrid) {
  Waveform x;
  x.samples.assign(16000, 0.0);
  const ComplexGrid g = stft(x, StftConfig{});
  for (const auto& z : g.data) EXPECT_EQ(z, std::complex<double>(0.0, 0.0));
}

TEST(Stft, RejectsEmptyWaveform) {
  Waveform x;
  EXPECT_THROW(stft(x, StftConfig{}), std::invalid_argument);
}

TEST(Stft, FrameCountAndShape) {
  Waveform x;
  x.samples.assign(16000, 0.1);
  const StftConfig cfg;
  const ComplexGrid g = stft(x, cfg);
  EXPECT_EQ(g.frames, 16000u / 160u + 1u);
  EXPECT_EQ(g.bins, 513u);
}

TEST(Stft, MatchesDirectDftOracle) {
  // 1 kHz cosine lands exactly on bin 1000*1024/16000 = 64.
  const StftConfig cfg;
  Waveform x;
  x.sample_rate = 16000;
  x.samples.resize(16000);
  for (std::size_t t = 0; t < x.samples.size(); ++t) {
    x.samples[t] = std::cos(2.0 * kPi * 1000.0 * double(t) / 16000.0);
  }
  const ComplexGrid g = stft(x, cfg);

  for (std::size_t f : {std::size_t(0), std::size_t(1), std::size_t(50),
                        std::size_t(g.frames - 2), std::size_t(g.frames - 1)}) {
    const auto spec = oracle_dft(oracle_frame(x, cfg, f), g.bins);
    for (std::size_t k = 0; k < g.bins; ++k) {
      EXPECT_NEAR(std::abs(g.at(f, k) - spec[k]), 0.0, 1e-8)
          << "frame " << f << " bin " << k;
    }
  }

  auto argmax_of = [](auto&& magnitude_at, std::size_t nbins) {
    std::size_t argmax = 0;
    double best = -1.0;
    for (std::size_t k = 0; k < nbins; ++k) {
      const double mag = magnitude_at(k);
      if (mag > best) {
        best = mag;
        argmax = k;
      }
    }
    return argmax;
  };

  // Interior frames peak at the tone bin.  The final frame straddles the
  // reflection boundary, which breaks the tone's phase continuity; there the
  // oracle's own argmax is the reference.
  for (std::size_t f = 0; f + 1 < g.frames; ++f) {
    EXPECT_EQ(argmax_of([&](std::size_t k) { return std::abs(g.at(f, k)); }, g.bins),
              64u)
        << "frame " << f;
  }
  const std::size_t last = g.frames - 1;
  const auto spec = oracle_dft(oracle_frame(x, cfg, last), g.bins);
  EXPECT_EQ(argmax_of([&](std::size_t k) { return std::abs(g.at(last, k)); }, g.bins),
            argmax_of([&](std::size_t k) { return std::abs(spec[k]); }, g.bins));
}

TEST(Stft, ConstantSignalDcBin) {
  Waveform x;
  x.samples.assign(16000, 1.0);
  const ComplexGrid g = stft(x, StftConfig{});
  for (std::size_t f = 2; f + 2 < g.frames; ++f) {
    EXPECT_NEAR(std::abs(g.at(f, 0)), 160.0, 1e-9);
  }
}

TEST(Istft, ZeroGridGivesSilence) {
  const StftConfig cfg;
  const ComplexGrid g(11, 513);
  const Waveform y = istft(g, cfg, 1600);
  for (double v : y.samples) EXPECT_EQ(v, 0.0);
}

TEST(Istft, RejectsBinMismatch) {
  const ComplexGrid g(11, 100);
  EXPECT_THROW(istft(g, StftConfig{}, 100), std::invalid_argument);
}

TEST(Istft, RoundtripDefaultConfig) {
  const Waveform x = noise_tone_waveform(42, 16000);
  const StftConfig cfg;
  const Waveform y = istft(stft(x, cfg), cfg, x.samples.size());
  double worst = 0.0;
  for (std::size_t t = 0; t < x.samples.size(); ++t) {
    worst = std::max(worst, std::abs(x.samples[t] - y.samples[t]));
  }
  EXPECT_LT(worst, 1e-6);
}

TEST(Istft, RoundtripShortShift) {
  const Waveform x = noise_tone_waveform(43, 16000);
  const StftConfig cfg = StftConfig{}.with_shift(80);
  const Waveform y = istft(stft(x, cfg), cfg, x.samples.size());
  double worst = 0.0;
  for (std::size_t t = 0; t < x.samples.size(); ++t) {
    worst = std::max(worst, std::abs(x.samples[t] - y.samples[t]));
  }
  EXPECT_LT(worst, 1e-6);
}

TEST(Istft, RoundtripProperty) {
  for (std::uint64_t seed = 100; seed < 110; ++seed) {
    const std::size_t len = 1600 + (seed % 7) * 331;  // always >= 10 frames
    const Waveform x = noise_tone_waveform(seed, len);
    const StftConfig cfg;
    const Waveform y = istft(stft(x, cfg), cfg, len);
    for (std::size_t t = 0; t < len; ++t) {
      ASSERT_LT(std::abs(x.samples[t] - y.samples[t]), 1e-6) << "seed " << seed;
    }
  }
}

TEST(Istft, DegenerateNormalizationDetected) {
  // With shift == frame_length the periodic Hann's zero tap is never
  // covered by a neighbor, so some samples have zero weight.
  StftConfig cfg;
  cfg.frame_shift = cfg.frame_length;
  const Waveform x = noise_tone_waveform(44, 3200);
  const ComplexGrid g = stft(x, cfg);
  EXPECT_THROW(istft(g, cfg, x.samples.size()), NumericalError);
}

TEST(LogAmplitude, ExamplesAndFloor) {
  ComplexGrid g(1, 3);
  g.at(0, 0) = {1.0, 0.0};
  g.at(0, 1) = {0.0, 0.0};
  g.at(0, 2) = {3.0, 4.0};
  const LogAmpGrid a = log_amplitude(g);
  EXPECT_DOUBLE_EQ(a.at(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(a.at(0, 1), std::log(1e-10));
  EXPECT_DOUBLE_EQ(a.at(0, 2), std::log(5.0));
  EXPECT_THROW(log_amplitude(g, 0.0), std::invalid_argument);
  EXPECT_THROW(log_amplitude(g, -1.0), std::invalid_argument);
}

TEST(PhaseOf, ExamplesAndBranch) {
  ComplexGrid g(1, 5);
  g.at(0, 0) = {1.0, 0.0};
  g.at(0, 1) = {0.0, 1.0};
  g.at(0, 2) = {-1.0, 0.0};
  g.at(0, 3) = {0.0, 0.0};
  g.at(0, 4) = {-1.0, -0.0};  // negative zero imaginary must still give +pi
  const PhaseGrid p = phase_of(g);
  EXPECT_DOUBLE_EQ(p.at(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(p.at(0, 1), kPi / 2.0);
  EXPECT_DOUBLE_EQ(p.at(0, 2), kPi);
  EXPECT_DOUBLE_EQ(p.at(0, 3), 0.0);
  EXPECT_DOUBLE_EQ(p.at(0, 4), kPi);
}

TEST(PhaseOf, RecoversPrincipalAngle) {
  std::mt19937_64 rng(7);
  ComplexGrid g(8, 16);
  RealGrid theta(8, 16);
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double t = lfsp_test::urand_in(rng, -20.0, 20.0);
    theta.data[j] = t;
    g.data[j] = {std::cos(t), std::sin(t)};
  }
  const PhaseGrid p = phase_of(g);
  for (std::size_t j = 0; j < g.size(); ++j) {
    EXPECT_NEAR(p.data[j], principal_phase(theta.data[j]), 1e-12);
    EXPECT_GT(p.data[j], -kPi);
    EXPECT_LE(p.data[j], kPi);
  }
}

TEST(Stft, ParsevalOnIsolatedFrame) {
  const StftConfig cfg;
  const Waveform x = noise_tone_waveform(45, 16000);
  const ComplexGrid g = stft(x, cfg);

  const std::size_t f = 40;
  const std::vector<double> frame = oracle_frame(x, cfg, f);
  double frame_energy = 0.0;
  for (double v : frame) frame_energy += v * v;

  double spec_energy = std::norm(g.at(f, 0)) + std::norm(g.at(f, g.bins - 1));
  for (std::size_t k = 1; k + 1 < g.bins; ++k) spec_energy += 2.0 * std::norm(g.at(f, k));
  spec_energy /= double(cfg.fft_size);

  EXPECT_NEAR(spec_energy / frame_energy, 1.0, 1e-9);
}

TEST(PolarGrid, RebuildsComplexValues) {
  const LogAmpGrid a = lfsp_test::random_grid(3, 4, 6, -2.0, 2.0);
  const PhaseGrid p = lfsp_test::random_phase_grid(4, 4, 6);
  const ComplexGrid c = polar_grid(a, p);
  for (std::size_t j = 0; j < c.size(); ++j) {
    EXPECT_NEAR(std::abs(c.data[j]), std::exp(a.data[j]), 1e-12);
    EXPECT_NEAR(wrap_distance(std::arg(c.data[j]), p.data[j]), 0.0, 1e-12);
  }
}
