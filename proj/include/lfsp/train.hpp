// lfsp/train.hpp -- loss composition, reverse-mode gradients, gradient
// checking and momentum-SGD training for the phase predictor.
//
// Copyright 2026 lfsp authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0

#ifndef LFSP_TRAIN_HPP_
#define LFSP_TRAIN_HPP_

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

#include "lfsp/common.hpp"
#include "lfsp/grid.hpp"
#include "lfsp/losses.hpp"
#include "lfsp/model.hpp"

namespace lfsp {

// Weighted anti-wrapping loss between two phase grids.  Components with a
// zero weight are skipped entirely.
inline double weighted_phase_loss(const PhaseGrid& predicted,
                                  const PhaseGrid& target, const LossWeights& w) {
  w.validate();
  double loss = 0.0;
  if (w.w_ip > 0.0) loss += w.w_ip * ip_loss(predicted, target);
  if (w.w_gd > 0.0) loss += w.w_gd * gd_loss(predicted, target);
  if (w.w_iaf > 0.0) loss += w.w_iaf * iaf_loss(predicted, target);
  return loss;
}

// Loss of the model prediction for one (input, target) pair.
inline double total_loss(const ModelParams& params, const LogAmpGrid& input,
                         const PhaseGrid& target, const LossWeights& w) {
  w.validate();
  auto [r, i] = forward(params, input);
  check_arg(target.same_shape(r), "total_loss: target shape mismatch");
  return weighted_phase_loss(phase_formula(r, i), target, w);
}

namespace detail {

inline double sgn(double x) { return (x > 0.0) - (x < 0.0); }

// d anti_wrap(e) / d e, using the sign of the wrapped residual at the
// (measure-zero) kink points.
inline double anti_wrap_slope(double e) {
  const double two_pi = 2.0 * std::numbers::pi;
  return sgn(e - two_pi * std::round(e / two_pi));
}

}  // namespace detail

struct GradResult {
  double loss = 0.0;
  std::vector<Tensor> grads;  // same order and shapes as ModelParams::tensors
};

// Reverse-mode gradient of the weighted anti-wrapping loss with respect to
// every parameter tensor.
inline GradResult grad(const ModelParams& params, const LogAmpGrid& input,
                       const PhaseGrid& target, const LossWeights& w) {
  w.validate();
  ForwardCache cache;
  forward_cached(params, input, cache);
  check_arg(target.same_shape(cache.r), "grad: target shape mismatch");

  const std::size_t frames = cache.r.frames;
  const std::size_t n = cache.r.bins;
  const int channels = params.arch.channels;
  const std::size_t c = std::size_t(channels);
  const int kernel = params.arch.kernel_time;
  const int half = kernel / 2;

  const PhaseGrid predicted = phase_formula(cache.r, cache.i);

  GradResult out;
  out.loss = weighted_phase_loss(predicted, target, w);
  out.grads.reserve(params.tensors.size());
  for (const Tensor& t : params.tensors) out.grads.push_back(Tensor::zeros(t.name, t.dims));

  // dL/dPhi from the three loss terms.
  RealGrid dphi(frames, n, 0.0);
  if (w.w_ip > 0.0) {
    const double scale = w.w_ip / double(frames * n);
    for (std::size_t j = 0; j < dphi.size(); ++j) {
      dphi.data[j] += scale * detail::anti_wrap_slope(predicted.data[j] - target.data[j]);
    }
  }
  if (w.w_gd > 0.0 && n >= 2) {
    const double scale = w.w_gd / double(frames * (n - 1));
    for (std::size_t f = 0; f < frames; ++f) {
      for (std::size_t j = 0; j + 1 < n; ++j) {
        const double e = (predicted.at(f, j + 1) - predicted.at(f, j)) -
                         (target.at(f, j + 1) - target.at(f, j));
        const double s = scale * detail::anti_wrap_slope(e);
        dphi.at(f, j + 1) += s;
        dphi.at(f, j) -= s;
      }
    }
  }
  if (w.w_iaf > 0.0 && frames >= 2) {
    const double scale = w.w_iaf / double((frames - 1) * n);
    for (std::size_t f = 0; f + 1 < frames; ++f) {
      for (std::size_t j = 0; j < n; ++j) {
        const double e = (predicted.at(f + 1, j) - predicted.at(f, j)) -
                         (target.at(f + 1, j) - target.at(f, j));
        const double s = scale * detail::anti_wrap_slope(e);
        dphi.at(f + 1, j) += s;
        dphi.at(f, j) -= s;
      }
    }
  }

  // Through the angle: datan2(i, r) = (-i, r) / (r^2 + i^2).
  RealGrid dr(frames, n, 0.0), di(frames, n, 0.0);
  for (std::size_t j = 0; j < dphi.size(); ++j) {
    const double rv = cache.r.data[j];
    const double iv = cache.i.data[j];
    const double norm2 = rv * rv + iv * iv;
    if (norm2 > 0.0) {
      dr.data[j] = dphi.data[j] * (-iv / norm2);
      di.data[j] = dphi.data[j] * (rv / norm2);
    }
  }

  // Heads.
  const std::vector<double>& hlast = cache.h.back();
  Tensor& g_rw = out.grads[params.head_r_w()];
  Tensor& g_rb = out.grads[params.head_r_b()];
  Tensor& g_iw = out.grads[params.head_i_w()];
  Tensor& g_ib = out.grads[params.head_i_b()];
  const Tensor& rw = params.tensors[params.head_r_w()];
  const Tensor& iw = params.tensors[params.head_i_w()];
  std::vector<double> dh(frames * c, 0.0);
  for (std::size_t f = 0; f < frames; ++f) {
    const double* hf = hlast.data() + f * c;
    double* dhf = dh.data() + f * c;
    for (std::size_t j = 0; j < n; ++j) {
      const double gr = dr.at(f, j);
      const double gi = di.at(f, j);
      if (gr == 0.0 && gi == 0.0) continue;
      double* grw = g_rw.data.data() + j * c;
      double* giw = g_iw.data.data() + j * c;
      const double* wr = rw.data.data() + j * c;
      const double* wi = iw.data.data() + j * c;
      for (std::size_t ci = 0; ci < c; ++ci) {
        grw[ci] += gr * hf[ci];
        giw[ci] += gi * hf[ci];
        dhf[ci] += gr * wr[ci] + gi * wi[ci];
      }
      g_rb.data[j] += gr;
      g_ib.data[j] += gi;
    }
  }

  // Residual blocks, reversed: h' = h + tanh(u), u = conv(h) + b.
  std::vector<double> du(frames * c), dh_prev(frames * c);
  for (int b = params.arch.num_blocks - 1; b >= 0; --b) {
    const std::vector<double>& act = cache.act[std::size_t(b)];
    const std::vector<double>& hin = cache.h[std::size_t(b)];
    const Tensor& wt = params.tensors[params.block_w(b)];
    Tensor& g_w = out.grads[params.block_w(b)];
    Tensor& g_b = out.grads[params.block_b(b)];

    for (std::size_t j = 0; j < frames * c; ++j) {
      du[j] = dh[j] * (1.0 - act[j] * act[j]);
    }
    dh_prev = dh;  // residual path
    for (std::size_t f = 0; f < frames; ++f) {
      const double* duf = du.data() + f * c;
      for (int co = 0; co < channels; ++co) {
        const double g = duf[co];
        if (g == 0.0) continue;
        g_b.data[std::size_t(co)] += g;
        for (int t = 0; t < kernel; ++t) {
          const long long fs = (long long)f + t - half;
          if (fs < 0 || fs >= (long long)frames) continue;
          const double* hrow = hin.data() + std::size_t(fs) * c;
          double* drow = dh_prev.data() + std::size_t(fs) * c;
          double* gw = g_w.data.data() + std::size_t(co) * c * std::size_t(kernel);
          const double* wf = wt.data.data() + std::size_t(co) * c * std::size_t(kernel);
          for (int ci = 0; ci < channels; ++ci) {
            gw[std::size_t(ci) * std::size_t(kernel) + std::size_t(t)] += g * hrow[ci];
            drow[ci] += g * wf[std::size_t(ci) * std::size_t(kernel) + std::size_t(t)];
          }
        }
      }
    }
    dh.swap(dh_prev);
  }

  // Input projection.
  Tensor& g_inw = out.grads[0];
  Tensor& g_inb = out.grads[1];
  for (std::size_t f = 0; f < frames; ++f) {
    const double* arow = input.row(f);
    const double* dhf = dh.data() + f * c;
    for (int co = 0; co < channels; ++co) {
      const double g = dhf[co];
      if (g == 0.0) continue;
      g_inb.data[std::size_t(co)] += g;
      double* gw = g_inw.data.data() + std::size_t(co) * n;
      for (std::size_t j = 0; j < n; ++j) gw[j] += g * arow[j];
    }
  }

  return out;
}

// Max relative disagreement between analytic and central finite-difference
// gradients.  Intended for tiny instances only.
inline double grad_check(const ModelParams& params, const LogAmpGrid& input,
                         const PhaseGrid& target, const LossWeights& w,
                         double step = 1e-5) {
  GradResult analytic = grad(params, input, target, w);
  ModelParams probe = params;
  double worst = 0.0;
  for (std::size_t t = 0; t < probe.tensors.size(); ++t) {
    for (std::size_t j = 0; j < probe.tensors[t].size(); ++j) {
      const double saved = probe.tensors[t].data[j];
      probe.tensors[t].data[j] = saved + step;
      const double up = total_loss(probe, input, target, w);
      probe.tensors[t].data[j] = saved - step;
      const double down = total_loss(probe, input, target, w);
      probe.tensors[t].data[j] = saved;
      const double numeric = (up - down) / (2.0 * step);
      const double analytic_g = analytic.grads[t].data[j];
      const double denom = std::max({std::abs(numeric), std::abs(analytic_g), 1e-8});
      worst = std::max(worst, std::abs(numeric - analytic_g) / denom);
    }
  }
  return worst;
}

struct TrainConfig {
  double learning_rate = 1e-3;
  double momentum = 0.9;
  int steps = 1000;
  std::uint64_t seed = 0;

  void validate() const {
    check_arg(learning_rate >= 0.0, "TrainConfig: learning_rate must be >= 0");
    check_arg(momentum >= 0.0 && momentum < 1.0, "TrainConfig: momentum in [0, 1)");
    check_arg(steps >= 0, "TrainConfig: steps must be >= 0");
  }
};

struct TrainExample {
  LogAmpGrid input;
  PhaseGrid target;
};

struct TrainResult {
  ModelParams params;
  std::vector<double> loss_trace;  // one entry per step, before the update
};

// Thrown when the loss turns non-finite; carries the last parameter set
// that still produced a finite loss.
class TrainingError : public NumericalError {
 public:
  TrainingError(int step, ModelParams last_good)
      : NumericalError("training diverged: non-finite loss at step " +
                       std::to_string(step)),
        step_(step),
        last_good_(std::move(last_good)) {}

  int step() const { return step_; }
  const ModelParams& last_good() const { return last_good_; }

 private:
  int step_;
  ModelParams last_good_;
};

// Momentum SGD over single-example steps.  Example order reshuffles every
// epoch with a seeded Fisher-Yates pass, so runs are reproducible.
inline TrainResult train(ModelParams params, const std::vector<TrainExample>& dataset,
                         const TrainConfig& cfg, const LossWeights& w) {
  cfg.validate();
  w.validate();
  check_arg(!dataset.empty(), "train: dataset must be nonempty");

  std::vector<Tensor> velocity;
  velocity.reserve(params.tensors.size());
  for (const Tensor& t : params.tensors) velocity.push_back(Tensor::zeros(t.name, t.dims));

  std::mt19937_64 rng(cfg.seed);
  std::vector<std::size_t> order(dataset.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  auto reshuffle = [&]() {
    for (std::size_t i = order.size(); i > 1; --i) {
      const std::size_t j = std::size_t(detail::uniform_unit(rng) * double(i));
      std::swap(order[i - 1], order[j < i ? j : i - 1]);
    }
  };

  TrainResult result;
  result.loss_trace.reserve(std::size_t(cfg.steps));
  ModelParams last_good = params;
  for (int step = 0; step < cfg.steps; ++step) {
    if (step % int(dataset.size()) == 0) reshuffle();
    const TrainExample& ex = dataset[order[std::size_t(step) % dataset.size()]];
    GradResult g = grad(params, ex.input, ex.target, w);
    if (!std::isfinite(g.loss)) {
      throw TrainingError(step, std::move(last_good));
    }
    result.loss_trace.push_back(g.loss);
    last_good = params;
    for (std::size_t t = 0; t < params.tensors.size(); ++t) {
      double* p = params.tensors[t].data.data();
      double* v = velocity[t].data.data();
      const double* gd = g.grads[t].data.data();
      for (std::size_t j = 0; j < params.tensors[t].size(); ++j) {
        v[j] = cfg.momentum * v[j] - cfg.learning_rate * gd[j];
        p[j] += v[j];
      }
    }
  }
  result.params = std::move(params);
  return result;
}

}  // namespace lfsp

#endif  // LFSP_TRAIN_HPP_
