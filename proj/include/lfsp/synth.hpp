// lfsp/synth.hpp -- deterministic synthetic speech-like corpus: harmonic
// stacks with vibrato and amplitude modulation, an optional chirp, and a
// low noise floor.
//
// Copyright 2026 lfsp authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0

#ifndef LFSP_SYNTH_HPP_
#define LFSP_SYNTH_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "lfsp/common.hpp"
#include "lfsp/dsp.hpp"
#include "lfsp/model.hpp"

namespace lfsp {

struct CorpusSpec {
  int count = 100;
  double seconds = 1.0;
  std::uint64_t seed = 1;
  int sample_rate = 16000;
  int harmonics_min = 3;
  int harmonics_max = 8;
  double f0_min = 80.0;
  double f0_max = 300.0;
  bool chirp = true;
  double noise_db = -30.0;  // noise RMS relative to signal RMS

  void validate() const {
    check_arg(count >= 1, "CorpusSpec: count must be >= 1");
    check_arg(seconds >= 0.25, "CorpusSpec: duration must be >= 0.25 s");
    check_arg(sample_rate >= 1000, "CorpusSpec: sample_rate must be >= 1000");
    check_arg(harmonics_min >= 1 && harmonics_max >= harmonics_min,
              "CorpusSpec: bad harmonics range");
    check_arg(f0_min > 0.0 && f0_max >= f0_min, "CorpusSpec: bad f0 range");
  }
};

namespace detail {

inline double uniform_in(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform_unit(rng);
}

inline Waveform synth_utterance(const CorpusSpec& spec, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::size_t total = std::size_t(spec.seconds * spec.sample_rate);
  const double sr = double(spec.sample_rate);

  const int n_harm = spec.harmonics_min +
                     int(uniform_unit(rng) * double(spec.harmonics_max -
                                                    spec.harmonics_min + 1));
  const double f0 = uniform_in(rng, spec.f0_min, spec.f0_max);
  const double vib_depth = uniform_in(rng, 0.005, 0.03);
  const double vib_rate = uniform_in(rng, 2.0, 8.0);
  const double vib_phase = uniform_in(rng, 0.0, 2.0 * std::numbers::pi);

  struct Harmonic {
    double amp, phase, am_depth, am_rate, am_phase;
  };
  std::vector<Harmonic> harmonics;
  for (int h = 1; h <= n_harm; ++h) {
    Harmonic part;
    part.amp = uniform_in(rng, 0.4, 1.0) / double(h);
    part.phase = uniform_in(rng, -std::numbers::pi, std::numbers::pi);
    part.am_depth = uniform_in(rng, 0.0, 0.6);
    part.am_rate = uniform_in(rng, 0.5, 6.0);
    part.am_phase = uniform_in(rng, 0.0, 2.0 * std::numbers::pi);
    // Keep every partial safely below Nyquist even at the vibrato peak.
    if (double(h) * f0 * (1.0 + vib_depth) > 0.45 * sr) part.amp = 0.0;
    harmonics.push_back(part);
  }

  double chirp_amp = 0.0, chirp_f0 = 0.0, chirp_f1 = 0.0, chirp_phase = 0.0;
  if (spec.chirp) {
    chirp_amp = uniform_in(rng, 0.05, 0.3);
    chirp_f0 = uniform_in(rng, 300.0, 3000.0);
    chirp_f1 = uniform_in(rng, 300.0, 3000.0);
    chirp_phase = uniform_in(rng, -std::numbers::pi, std::numbers::pi);
  }

  std::vector<double> x(total, 0.0);
  double theta = 0.0;        // fundamental phase accumulator
  double chirp_theta = 0.0;  // chirp phase accumulator
  for (std::size_t t = 0; t < total; ++t) {
    const double time = double(t) / sr;
    double sample = 0.0;
    for (int h = 1; h <= n_harm; ++h) {
      const Harmonic& part = harmonics[std::size_t(h - 1)];
      if (part.amp == 0.0) continue;
      const double am =
          1.0 + part.am_depth * std::sin(2.0 * std::numbers::pi * part.am_rate * time +
                                         part.am_phase);
      sample += part.amp * am * std::cos(double(h) * theta + part.phase);
    }
    if (chirp_amp > 0.0) {
      sample += chirp_amp * std::cos(chirp_theta + chirp_phase);
      const double inst_f = chirp_f0 + (chirp_f1 - chirp_f0) * time / spec.seconds;
      chirp_theta += 2.0 * std::numbers::pi * inst_f / sr;
    }
    x[t] = sample;
    const double inst_f0 =
        f0 * (1.0 + vib_depth *
                        std::sin(2.0 * std::numbers::pi * vib_rate * time + vib_phase));
    theta += 2.0 * std::numbers::pi * inst_f0 / sr;
  }

  double rms = 0.0;
  for (double v : x) rms += v * v;
  rms = std::sqrt(rms / double(total));
  const double noise_amp = rms * std::pow(10.0, spec.noise_db / 20.0) * std::sqrt(3.0);
  for (std::size_t t = 0; t < total; ++t) {
    x[t] += noise_amp * (2.0 * uniform_unit(rng) - 1.0);
  }

  // Short fades avoid boundary clicks.
  const std::size_t fade = std::min<std::size_t>(total / 8, std::size_t(sr * 0.01));
  for (std::size_t t = 0; t < fade; ++t) {
    const double g = double(t + 1) / double(fade + 1);
    x[t] *= g;
    x[total - 1 - t] *= g;
  }

  double peak = 0.0;
  for (double v : x) peak = std::max(peak, std::abs(v));
  if (peak > 0.0) {
    const double gain = 0.9 / peak;
    for (double& v : x) v = std::clamp(v * gain, -0.9, 0.9);
  }

  Waveform w;
  w.sample_rate = spec.sample_rate;
  w.samples = std::move(x);
  return w;
}

}  // namespace detail

// Deterministic per (spec, seed): utterance u is generated from a sub-seed
// drawn from a master generator seeded with `seed`.
inline std::vector<Waveform> synth_corpus(const CorpusSpec& spec, std::uint64_t seed) {
  spec.validate();
  std::mt19937_64 master(seed);
  std::vector<Waveform> corpus;
  corpus.reserve(std::size_t(spec.count));
  for (int u = 0; u < spec.count; ++u) {
    corpus.push_back(detail::synth_utterance(spec, master()));
  }
  return corpus;
}

inline std::vector<Waveform> synth_corpus(const CorpusSpec& spec) {
  return synth_corpus(spec, spec.seed);
}

}  // namespace lfsp

#endif  // LFSP_SYNTH_HPP_
