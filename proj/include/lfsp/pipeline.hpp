// lfsp/pipeline.hpp -- the end-to-end long-frame-shift phase prediction
// pipeline: training-pair construction, training orchestration, prediction,
// reconstruction, objective evaluation and phase-continuity export.
//
// Copyright 2026 lfsp authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0

#ifndef LFSP_PIPELINE_HPP_
#define LFSP_PIPELINE_HPP_

#include <chrono>
#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "lfsp/common.hpp"
#include "lfsp/dsp.hpp"
#include "lfsp/grid.hpp"
#include "lfsp/losses.hpp"
#include "lfsp/model.hpp"
#include "lfsp/resample.hpp"
#include "lfsp/retrieval.hpp"
#include "lfsp/synth.hpp"
#include "lfsp/train.hpp"

namespace lfsp {

// Which log-amplitude grid feeds the network during training.
enum class InputSource {
  kInterpolated,  // interpolated short-shift grid built from long-shift input
  kNaturalSfs,    // natural short-shift grid (no interpolation error)
  kLfs,           // natural long-shift grid, long-shift targets
};

struct ExperimentConfig {
  StftConfig stft;  // long-shift analysis configuration
  InterpConfig interp;
  ModelArch model;
  TrainConfig training;
  LossWeights loss_weights;
  CorpusSpec corpus;       // training utterances
  CorpusSpec eval_corpus;  // held-out utterances, disjoint seed
  IterAlgoConfig baseline;

  struct Paths {
    std::string corpus_dir;
    std::string model;
  } paths;

  ExperimentConfig() {
    eval_corpus.count = 20;
    eval_corpus.seed = 777;
    model.input_bins = stft.bins();
  }

  StftConfig short_stft() const { return stft.with_shift(stft.frame_shift / interp.ratio); }

  void validate() const {
    stft.validate();
    interp.validate();
    check_arg(stft.frame_shift % interp.ratio == 0,
              "ExperimentConfig: long shift must be ratio times the short shift");
    check_arg(stft.frame_shift <= stft.frame_length / 2,
              "ExperimentConfig: long shift must respect the reconstruction bound "
              "(half the frame length)");
    ModelArch arch = model;
    arch.input_bins = stft.bins();
    arch.validate();
    training.validate();
    loss_weights.validate();
    corpus.validate();
    eval_corpus.validate();
    check_arg(corpus.seed != eval_corpus.seed,
              "ExperimentConfig: evaluation corpus seed must differ from training");
  }
};

// Builds one training pair per the chosen input source.  For the
// interpolated source the input is the D-times interpolated long-shift
// log-amplitude grid and the target the natural short-shift phase grid;
// frame counts are equalized by truncation to the shorter.
inline TrainExample build_training_pair(const Waveform& x, const ExperimentConfig& cfg,
                                        InputSource source = InputSource::kInterpolated) {
  check_arg((long long)x.samples.size() >= cfg.stft.frame_shift,
            "build_training_pair: waveform too short for two long-shift frames");

  TrainExample ex;
  switch (source) {
    case InputSource::kInterpolated: {
      const LogAmpGrid long_las = log_amplitude(stft(x, cfg.stft));
      LogAmpGrid input = interpolate_grid(long_las, cfg.interp);
      PhaseGrid target = phase_of(stft(x, cfg.short_stft()));
      const std::size_t frames = std::min(input.frames, target.frames);
      input.frames = frames;
      input.data.resize(frames * input.bins);
      target.frames = frames;
      target.data.resize(frames * target.bins);
      ex.input = std::move(input);
      ex.target = std::move(target);
      break;
    }
    case InputSource::kNaturalSfs: {
      const ComplexGrid c = stft(x, cfg.short_stft());
      ex.input = log_amplitude(c);
      ex.target = phase_of(c);
      break;
    }
    case InputSource::kLfs: {
      const ComplexGrid c = stft(x, cfg.stft);
      ex.input = log_amplitude(c);
      ex.target = phase_of(c);
      break;
    }
  }
  return ex;
}

struct TrainPipelineResult {
  ModelParams params;
  std::vector<double> loss_trace;
};

// Synthesizes the training corpus, builds pairs for the requested input
// source and trains the predictor.
inline TrainPipelineResult train_pipeline(const ExperimentConfig& cfg,
                                          InputSource source = InputSource::kInterpolated) {
  cfg.validate();
  const std::vector<Waveform> corpus = synth_corpus(cfg.corpus);
  std::vector<TrainExample> dataset;
  dataset.reserve(corpus.size());
  for (const Waveform& x : corpus) {
    dataset.push_back(build_training_pair(x, cfg, source));
  }
  ModelArch arch = cfg.model;
  arch.input_bins = cfg.stft.bins();
  ModelParams params = init_params(arch, cfg.training.seed);
  TrainResult result = train(std::move(params), dataset, cfg.training, cfg.loss_weights);
  return {std::move(result.params), std::move(result.loss_trace)};
}

// Interpolation -> prediction -> decimation: predicts the long-shift phase
// grid from the long-shift log-amplitude grid.
inline PhaseGrid lfs_nspp_predict(const LogAmpGrid& long_las, const ModelParams& params,
                                  const InterpConfig& interp) {
  interp.validate();
  if (interp.ratio == 1) {
    auto [r, i] = forward(params, long_las);
    return phase_formula(r, i);
  }
  const LogAmpGrid upsampled = interpolate_grid(long_las, interp);
  auto [r, i] = forward(params, upsampled);
  return decimate_grid(phase_formula(r, i), interp.ratio);
}

// istft(exp(A) * exp(iP)); length 0 means (frames-1)*shift samples.
inline Waveform reconstruct(const LogAmpGrid& log_amp, const PhaseGrid& phase,
                            const StftConfig& cfg, std::size_t length = 0) {
  check_arg(log_amp.same_shape(phase), "reconstruct: shape mismatch");
  if (length == 0) {
    check_arg(log_amp.frames >= 1, "reconstruct: empty grid");
    length = (log_amp.frames - 1) * std::size_t(cfg.frame_shift);
  }
  return istft(polar_grid(log_amp, phase), cfg, length);
}

struct MetricsRecord {
  std::string system;
  double iaf = 0.0;
  double spectral_convergence = 0.0;
  double snr_db = 0.0;
  double rtf = 0.0;
  int n_utts = 0;
};

// A named phase predictor: maps the natural long-shift log-amplitude grid
// (and, for the oracle, the natural phase grid) to a long-shift phase grid.
struct EvalSystem {
  std::string name;
  std::function<PhaseGrid(const LogAmpGrid&, const PhaseGrid&)> predict;
};

inline EvalSystem make_oracle_system() {
  return {"oracle", [](const LogAmpGrid&, const PhaseGrid& natural) { return natural; }};
}

inline EvalSystem make_zero_phase_system() {
  return {"zero", [](const LogAmpGrid& las, const PhaseGrid&) {
            return PhaseGrid(las.frames, las.bins, 0.0);
          }};
}

// D = 1 runs the model directly on the long-shift grid; D > 1 runs the
// interpolation-prediction-decimation pipeline.
inline EvalSystem make_model_system(std::string name, ModelParams params,
                                    InterpConfig interp) {
  return {std::move(name),
          [params = std::move(params), interp](const LogAmpGrid& las, const PhaseGrid&) {
            return lfs_nspp_predict(las, params, interp);
          }};
}

inline EvalSystem make_baseline_system(std::string name, const IterAlgoConfig& acfg,
                                       const StftConfig& cfg_long, bool lfs,
                                       const InterpConfig& interp) {
  if (lfs) {
    return {std::move(name), [acfg, cfg_long, interp](const LogAmpGrid& las, const PhaseGrid&) {
              return lfs_wrap(make_retrieval_estimator(acfg), las, interp, cfg_long);
            }};
  }
  return {std::move(name), [acfg, cfg_long](const LogAmpGrid& las, const PhaseGrid&) {
            return make_retrieval_estimator(acfg)(las, cfg_long);
          }};
}

namespace detail {

inline double grid_abs_frobenius(const ComplexGrid& g) {
  double sum = 0.0;
  for (const auto& z : g.data) sum += std::norm(z);
  return std::sqrt(sum);
}

}  // namespace detail

inline double snr_db(const std::vector<double>& reference,
                     const std::vector<double>& estimate) {
  check_arg(reference.size() == estimate.size(), "snr_db: length mismatch");
  double num = 0.0, den = 0.0;
  for (std::size_t t = 0; t < reference.size(); ++t) {
    num += reference[t] * reference[t];
    const double e = reference[t] - estimate[t];
    den += e * e;
  }
  if (den == 0.0) return 300.0;  // numerically perfect reconstruction
  return 10.0 * std::log10(num / den);
}

// Runs one system over a test set and aggregates the objective metrics.
// IAF compares predicted and natural long-shift phase grids; spectral
// convergence and SNR compare the reconstruction against the original
// waveform; RTF is generation wall-clock time over audio duration
// (everything here runs on a single thread).
inline MetricsRecord evaluate(const EvalSystem& system,
                              const std::vector<Waveform>& test_set,
                              const ExperimentConfig& cfg) {
  check_arg(!test_set.empty(), "evaluate: empty test set");

  MetricsRecord record;
  record.system = system.name;
  record.n_utts = int(test_set.size());

  double iaf_sum = 0.0, sc_sum = 0.0, snr_sum = 0.0;
  double gen_seconds = 0.0, audio_seconds = 0.0;
  for (const Waveform& x : test_set) {
    const ComplexGrid natural = stft(x, cfg.stft);
    const LogAmpGrid las = log_amplitude(natural);
    const PhaseGrid natural_phase = phase_of(natural);

    const auto t0 = std::chrono::steady_clock::now();
    const PhaseGrid predicted = system.predict(las, natural_phase);
    const Waveform rec = reconstruct(las, predicted, cfg.stft, x.samples.size());
    const auto t1 = std::chrono::steady_clock::now();
    gen_seconds += std::chrono::duration<double>(t1 - t0).count();
    audio_seconds += x.duration_seconds();

    check_arg(predicted.same_shape(natural_phase),
              "evaluate: predicted phase grid has the wrong shape");
    iaf_sum += iaf_loss(predicted, natural_phase);
    snr_sum += snr_db(x.samples, rec.samples);

    const ComplexGrid rec_spec = stft(rec, cfg.stft);
    double diff = 0.0;
    for (std::size_t j = 0; j < natural.size(); ++j) {
      const double d = std::abs(rec_spec.data[j]) - std::abs(natural.data[j]);
      diff += d * d;
    }
    sc_sum += std::sqrt(diff) / detail::grid_abs_frobenius(natural);
  }

  record.iaf = iaf_sum / double(test_set.size());
  record.spectral_convergence = sc_sum / double(test_set.size());
  record.snr_db = snr_sum / double(test_set.size());
  record.rtf = gen_seconds / audio_seconds;
  return record;
}

struct ContinuityRow {
  int shift;
  std::size_t frame;
  double phase;
};

// Phase trajectories of one frequency bin under several frame shifts, for
// external plotting.
inline std::vector<ContinuityRow> phase_continuity_export(const Waveform& x, int bin,
                                                          const std::vector<int>& shifts,
                                                          const StftConfig& base_cfg) {
  check_arg(!shifts.empty(), "phase_continuity_export: no shifts given");
  check_arg(bin >= 0 && bin < base_cfg.bins(),
            "phase_continuity_export: bin out of range");
  std::vector<ContinuityRow> rows;
  for (int shift : shifts) {
    check_arg(shift >= 1 && shift <= base_cfg.frame_length,
              "phase_continuity_export: shift must be in [1, frame_length]");
    const StftConfig cfg = base_cfg.with_shift(shift);
    const PhaseGrid phase = phase_of(stft(x, cfg));
    for (std::size_t f = 0; f < phase.frames; ++f) {
      rows.push_back({shift, f, phase.at(f, std::size_t(bin))});
    }
  }
  return rows;
}

}  // namespace lfsp

#endif  // LFSP_PIPELINE_HPP_
