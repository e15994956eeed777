// lfsp/retrieval.hpp -- iterative phase estimation from amplitude spectra:
// Griffin-Lim, fast Griffin-Lim and relaxed averaged alternating
// reflections, plus the interpolation-decimation wrapper that runs any
// estimator at a short frame shift.
//
// Copyright 2026 lfsp authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0

#ifndef LFSP_RETRIEVAL_HPP_
#define LFSP_RETRIEVAL_HPP_

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "lfsp/common.hpp"
#include "lfsp/dsp.hpp"
#include "lfsp/grid.hpp"
#include "lfsp/resample.hpp"

namespace lfsp {

enum class PhaseInit { kZeroPhase, kRandomPhase };
enum class IterAlgo { kGla, kFastGla, kRaar };

struct IterAlgoConfig {
  IterAlgo algorithm = IterAlgo::kGla;
  int iterations = 100;
  double momentum_alpha = 0.99;  // fast GLA extrapolation
  double beta = 0.9;             // RAAR relaxation
  PhaseInit init = PhaseInit::kZeroPhase;
  std::uint64_t seed = 0;        // random-phase init

  void validate() const {
    check_arg(iterations >= 0, "IterAlgoConfig: iterations must be >= 0");
    check_arg(momentum_alpha >= 0.0 && momentum_alpha < 1.0,
              "IterAlgoConfig: momentum_alpha must be in [0, 1)");
    check_arg(beta > 0.0 && beta <= 1.0, "IterAlgoConfig: beta must be in (0, 1]");
  }
};

// Rescales every element to the target magnitude while keeping its angle;
// elements of zero magnitude take angle 0.
inline ComplexGrid amplitude_projection(const ComplexGrid& grid, const AmpGrid& amp) {
  check_arg(grid.frames == amp.frames && grid.bins == amp.bins,
            "amplitude_projection: shape mismatch");
  ComplexGrid out(grid.frames, grid.bins);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double a = amp.data[j];
    check_arg(a >= 0.0, "amplitude_projection: amplitudes must be nonnegative");
    const double mag = std::abs(grid.data[j]);
    out.data[j] = (mag > 0.0) ? grid.data[j] * (a / mag)
                              : std::complex<double>(a, 0.0);
  }
  return out;
}

// Projects onto the set of consistent spectrograms: stft(istft(C)).
inline ComplexGrid consistency_projection(const ComplexGrid& grid,
                                          const StftConfig& cfg) {
  check_arg(grid.frames >= 2, "consistency_projection: needs at least 2 frames");
  const std::size_t length = (grid.frames - 1) * std::size_t(cfg.frame_shift);
  return stft(istft(grid, cfg, length), cfg);
}

struct RetrievalResult {
  PhaseGrid phase;
  // Relative inconsistency ||C_k - P_C(C_k)||_F / ||A||_F before each update.
  std::vector<double> inconsistency;
};

namespace detail {

inline double frobenius_norm(const ComplexGrid& g) {
  double sum = 0.0;
  for (const auto& z : g.data) sum += std::norm(z);
  return std::sqrt(sum);
}

inline double frobenius_norm(const RealGrid& g) {
  double sum = 0.0;
  for (double x : g.data) sum += x * x;
  return std::sqrt(sum);
}

inline double frobenius_distance(const ComplexGrid& a, const ComplexGrid& b) {
  double sum = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) sum += std::norm(a.data[j] - b.data[j]);
  return std::sqrt(sum);
}

inline ComplexGrid init_iterate(const AmpGrid& amp, PhaseInit init,
                                std::uint64_t seed) {
  ComplexGrid c(amp.frames, amp.bins);
  if (init == PhaseInit::kZeroPhase) {
    for (std::size_t j = 0; j < c.size(); ++j) c.data[j] = amp.data[j];
  } else {
    std::mt19937_64 rng(seed);
    for (std::size_t j = 0; j < c.size(); ++j) {
      const double phi =
          (2.0 * uniform_unit(rng) - 1.0) * std::numbers::pi;
      c.data[j] = std::polar(amp.data[j], phi);
    }
  }
  return c;
}

inline void validate_amplitudes(const AmpGrid& amp) {
  for (double a : amp.data) {
    check_arg(a >= 0.0 && std::isfinite(a),
              "phase retrieval: amplitudes must be finite and nonnegative");
  }
}

// Shared GLA engine; alpha = 0 reproduces plain GLA bit for bit because the
// extrapolation branch is skipped entirely.
inline RetrievalResult gla_engine(const AmpGrid& amp, const StftConfig& cfg,
                                  const IterAlgoConfig& acfg, double alpha) {
  cfg.validate();
  acfg.validate();
  validate_amplitudes(amp);

  const double amp_norm = frobenius_norm(amp);
  RetrievalResult result;
  if (amp_norm == 0.0) {
    result.phase = PhaseGrid(amp.frames, amp.bins, 0.0);
    return result;
  }

  ComplexGrid c = init_iterate(amp, acfg.init, acfg.seed);
  ComplexGrid c_prev = c;
  result.inconsistency.reserve(std::size_t(acfg.iterations));
  for (int k = 0; k < acfg.iterations; ++k) {
    if (alpha > 0.0 && k > 0) {
      ComplexGrid extrapolated(c.frames, c.bins);
      for (std::size_t j = 0; j < c.size(); ++j) {
        extrapolated.data[j] = c.data[j] + alpha * (c.data[j] - c_prev.data[j]);
      }
      // The trace measures the un-extrapolated iterate.
      const ComplexGrid pc_plain = consistency_projection(c, cfg);
      result.inconsistency.push_back(frobenius_distance(c, pc_plain) / amp_norm);
      c_prev = c;
      c = amplitude_projection(consistency_projection(extrapolated, cfg), amp);
    } else {
      const ComplexGrid pc = consistency_projection(c, cfg);
      result.inconsistency.push_back(frobenius_distance(c, pc) / amp_norm);
      c_prev = c;
      c = amplitude_projection(pc, amp);
    }
  }
  result.phase = phase_of(c);
  return result;
}

}  // namespace detail

// Griffin-Lim: alternate consistency and amplitude projections.
inline RetrievalResult gla(const AmpGrid& amp, const StftConfig& cfg,
                           const IterAlgoConfig& acfg) {
  return detail::gla_engine(amp, cfg, acfg, 0.0);
}

// Fast Griffin-Lim: GLA on a momentum-extrapolated iterate.
inline RetrievalResult fast_gla(const AmpGrid& amp, const StftConfig& cfg,
                                const IterAlgoConfig& acfg) {
  return detail::gla_engine(amp, cfg, acfg, acfg.momentum_alpha);
}

// Relaxed averaged alternating reflections:
//   C_{k+1} = (beta/2) (R_A(R_C(C_k)) + C_k) + (1 - beta) P_C(C_k)
// with reflections R = 2P - Id.  The returned phase is read after a closing
// amplitude projection of the consistency-projected iterate.
inline RetrievalResult raar(const AmpGrid& amp, const StftConfig& cfg,
                            const IterAlgoConfig& acfg) {
  cfg.validate();
  acfg.validate();
  detail::validate_amplitudes(amp);

  const double amp_norm = detail::frobenius_norm(amp);
  RetrievalResult result;
  if (amp_norm == 0.0) {
    result.phase = PhaseGrid(amp.frames, amp.bins, 0.0);
    return result;
  }

  const double beta = acfg.beta;
  ComplexGrid c = detail::init_iterate(amp, acfg.init, acfg.seed);
  result.inconsistency.reserve(std::size_t(acfg.iterations));
  for (int k = 0; k < acfg.iterations; ++k) {
    const ComplexGrid pc = consistency_projection(c, cfg);
    result.inconsistency.push_back(detail::frobenius_distance(c, pc) / amp_norm);

    ComplexGrid rc(c.frames, c.bins);
    for (std::size_t j = 0; j < c.size(); ++j) {
      rc.data[j] = 2.0 * pc.data[j] - c.data[j];
    }
    const ComplexGrid pa_rc = amplitude_projection(rc, amp);
    for (std::size_t j = 0; j < c.size(); ++j) {
      const std::complex<double> ra = 2.0 * pa_rc.data[j] - rc.data[j];
      c.data[j] = 0.5 * beta * (ra + c.data[j]) + (1.0 - beta) * pc.data[j];
    }
  }
  result.phase = phase_of(amplitude_projection(consistency_projection(c, cfg), amp));
  return result;
}

inline RetrievalResult run_phase_retrieval(const AmpGrid& amp, const StftConfig& cfg,
                                           const IterAlgoConfig& acfg) {
  switch (acfg.algorithm) {
    case IterAlgo::kGla: return gla(amp, cfg, acfg);
    case IterAlgo::kFastGla: return fast_gla(amp, cfg, acfg);
    case IterAlgo::kRaar: return raar(amp, cfg, acfg);
  }
  throw std::invalid_argument("run_phase_retrieval: unknown algorithm");
}

// Any estimator that maps a short-shift log-amplitude grid to a phase grid.
using PhaseEstimator =
    std::function<PhaseGrid(const LogAmpGrid&, const StftConfig&)>;

// Runs an estimator inside the interpolation-decimation framework: the
// long-shift log amplitudes are interpolated by cfg_interp.ratio, the
// estimator runs at the corresponding short shift, and the predicted phase
// is decimated back to long-shift frames.
inline PhaseGrid lfs_wrap(const PhaseEstimator& estimator, const LogAmpGrid& log_amp,
                          const InterpConfig& cfg_interp, const StftConfig& cfg_long) {
  cfg_long.validate();
  cfg_interp.validate();
  check_arg(cfg_long.frame_shift % cfg_interp.ratio == 0,
            "lfs_wrap: frame shift must be divisible by the interpolation ratio");
  const LogAmpGrid upsampled = interpolate_grid(log_amp, cfg_interp);
  const StftConfig cfg_short =
      cfg_long.with_shift(cfg_long.frame_shift / cfg_interp.ratio);
  const PhaseGrid short_phase = estimator(upsampled, cfg_short);
  check_arg(short_phase.frames == upsampled.frames &&
                short_phase.bins == upsampled.bins,
            "lfs_wrap: estimator changed the grid shape");
  return decimate_grid(short_phase, cfg_interp.ratio);
}

// Iterative-estimator wrapper in the log-amplitude domain.
inline PhaseEstimator make_retrieval_estimator(const IterAlgoConfig& acfg) {
  return [acfg](const LogAmpGrid& log_amp, const StftConfig& cfg) {
    AmpGrid amp(log_amp.frames, log_amp.bins);
    for (std::size_t j = 0; j < amp.size(); ++j) amp.data[j] = std::exp(log_amp.data[j]);
    return run_phase_retrieval(amp, cfg, acfg).phase;
  };
}

}  // namespace lfsp

#endif  // LFSP_RETRIEVAL_HPP_
