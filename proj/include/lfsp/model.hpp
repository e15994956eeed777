// lfsp/model.hpp -- the phase-prediction network: a residual time-domain
// convolutional trunk with parallel pseudo real/imaginary output heads whose
// four-quadrant angle is the predicted wrapped phase.
//
// Copyright 2026 lfsp authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0

#ifndef LFSP_MODEL_HPP_
#define LFSP_MODEL_HPP_

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "lfsp/common.hpp"
#include "lfsp/dsp.hpp"
#include "lfsp/grid.hpp"

namespace lfsp {

struct ModelArch {
  int input_bins = 513;
  int channels = 64;
  int num_blocks = 2;
  int kernel_time = 3;  // frequency mixing happens in the dense heads

  void validate() const {
    check_arg(input_bins >= 1, "ModelArch: input_bins must be >= 1");
    check_arg(channels >= 8, "ModelArch: channels must be >= 8");
    check_arg(num_blocks >= 1, "ModelArch: num_blocks must be >= 1");
    check_arg(kernel_time >= 1 && kernel_time % 2 == 1,
              "ModelArch: kernel_time must be odd and >= 1");
  }

  friend bool operator==(const ModelArch&, const ModelArch&) = default;
};

struct Tensor {
  std::string name;
  std::vector<std::uint32_t> dims;
  std::vector<double> data;

  static Tensor zeros(std::string name, std::vector<std::uint32_t> dims) {
    std::size_t n = 1;
    for (auto d : dims) n *= d;
    return Tensor{std::move(name), std::move(dims), std::vector<double>(n, 0.0)};
  }

  std::size_t size() const { return data.size(); }

  friend bool operator==(const Tensor&, const Tensor&) = default;
};

// Trainable parameters in a fixed order:
//   in.w [C,N], in.b [C],
//   block{i}.w [C,C,k], block{i}.b [C]   for i in [0, num_blocks),
//   head_r.w [N,C], head_r.b [N], head_i.w [N,C], head_i.b [N]
struct ModelParams {
  ModelArch arch;
  std::uint64_t rng_seed = 0;  // seed used at init; not persisted
  std::vector<Tensor> tensors;

  std::size_t block_w(int i) const { return 2 + 2 * std::size_t(i); }
  std::size_t block_b(int i) const { return 3 + 2 * std::size_t(i); }
  std::size_t head_r_w() const { return 2 + 2 * std::size_t(arch.num_blocks); }
  std::size_t head_r_b() const { return head_r_w() + 1; }
  std::size_t head_i_w() const { return head_r_w() + 2; }
  std::size_t head_i_b() const { return head_r_w() + 3; }
  std::size_t tensor_count() const { return head_r_w() + 4; }
};

namespace detail {

// Uniform double in [0, 1) from the top 53 bits of the generator output;
// pinned here so init does not depend on library distribution internals.
inline double uniform_unit(std::mt19937_64& rng) {
  return double(rng() >> 11) * 0x1.0p-53;
}

inline void fill_uniform(Tensor& t, std::mt19937_64& rng, double bound) {
  for (double& x : t.data) x = bound * (2.0 * uniform_unit(rng) - 1.0);
}

}  // namespace detail

// Fan-in scaled uniform init, deterministic per seed.  Biases start at zero.
inline ModelParams init_params(const ModelArch& arch, std::uint64_t seed) {
  arch.validate();
  const std::uint32_t n = std::uint32_t(arch.input_bins);
  const std::uint32_t c = std::uint32_t(arch.channels);
  const std::uint32_t k = std::uint32_t(arch.kernel_time);

  ModelParams p;
  p.arch = arch;
  p.rng_seed = seed;
  std::mt19937_64 rng(seed);

  p.tensors.push_back(Tensor::zeros("in.w", {c, n}));
  p.tensors.push_back(Tensor::zeros("in.b", {c}));
  for (int i = 0; i < arch.num_blocks; ++i) {
    p.tensors.push_back(
        Tensor::zeros("block" + std::to_string(i) + ".w", {c, c, k}));
    p.tensors.push_back(Tensor::zeros("block" + std::to_string(i) + ".b", {c}));
  }
  p.tensors.push_back(Tensor::zeros("head_r.w", {n, c}));
  p.tensors.push_back(Tensor::zeros("head_r.b", {n}));
  p.tensors.push_back(Tensor::zeros("head_i.w", {n, c}));
  p.tensors.push_back(Tensor::zeros("head_i.b", {n}));

  detail::fill_uniform(p.tensors[0], rng, 1.0 / std::sqrt(double(n)));
  for (int i = 0; i < arch.num_blocks; ++i) {
    detail::fill_uniform(p.tensors[p.block_w(i)], rng,
                         1.0 / std::sqrt(double(c) * double(k)));
  }
  detail::fill_uniform(p.tensors[p.head_r_w()], rng, 1.0 / std::sqrt(double(c)));
  detail::fill_uniform(p.tensors[p.head_i_w()], rng, 1.0 / std::sqrt(double(c)));
  return p;
}

// Intermediate activations kept for backpropagation.  h[0] is the input
// projection output; act[i] = tanh of block i's convolution and h[i+1] the
// post-residual features, all frames x channels row-major.
struct ForwardCache {
  std::vector<std::vector<double>> h;
  std::vector<std::vector<double>> act;
  RealGrid r;
  RealGrid i;
};

namespace detail {

// y[f, co] = sum_{ci, t} w[co, ci, t] * x[f + t - k/2, ci] + b[co],
// zero-padded along time.
inline void conv_time_forward(const std::vector<double>& x, std::size_t frames,
                              int channels, const Tensor& w, const Tensor& b,
                              int kernel, std::vector<double>& y) {
  const int half = kernel / 2;
  const std::size_t c = std::size_t(channels);
  y.assign(frames * c, 0.0);
  for (std::size_t f = 0; f < frames; ++f) {
    for (int t = 0; t < kernel; ++t) {
      const long long fs = (long long)f + t - half;
      if (fs < 0 || fs >= (long long)frames) continue;
      const double* xin = x.data() + std::size_t(fs) * c;
      for (int co = 0; co < channels; ++co) {
        const double* wrow = w.data.data() + (std::size_t(co) * c + 0) * std::size_t(kernel);
        double acc = 0.0;
        for (int ci = 0; ci < channels; ++ci) {
          acc += wrow[std::size_t(ci) * std::size_t(kernel) + std::size_t(t)] * xin[ci];
        }
        y[f * c + std::size_t(co)] += acc;
      }
    }
  }
  for (std::size_t f = 0; f < frames; ++f) {
    for (int co = 0; co < channels; ++co) y[f * c + std::size_t(co)] += b.data[std::size_t(co)];
  }
}

}  // namespace detail

// Runs the network on a frames x input_bins grid and produces the pseudo
// real and imaginary grids of the same shape.
inline void forward_cached(const ModelParams& params, const LogAmpGrid& input,
                           ForwardCache& cache) {
  params.arch.validate();
  check_arg(input.bins == std::size_t(params.arch.input_bins),
            "forward: input bin count does not match the architecture");
  check_arg(input.frames >= 1, "forward: input must contain at least one frame");

  const std::size_t frames = input.frames;
  const std::size_t n = input.bins;
  const int channels = params.arch.channels;
  const std::size_t c = std::size_t(channels);
  const int kernel = params.arch.kernel_time;

  cache.h.assign(std::size_t(params.arch.num_blocks) + 1, {});
  cache.act.assign(std::size_t(params.arch.num_blocks), {});

  // Input projection.
  const Tensor& in_w = params.tensors[0];
  const Tensor& in_b = params.tensors[1];
  cache.h[0].assign(frames * c, 0.0);
  for (std::size_t f = 0; f < frames; ++f) {
    const double* arow = input.row(f);
    for (int co = 0; co < channels; ++co) {
      const double* wrow = in_w.data.data() + std::size_t(co) * n;
      double acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) acc += wrow[j] * arow[j];
      cache.h[0][f * c + std::size_t(co)] = acc + in_b.data[std::size_t(co)];
    }
  }

  // Residual blocks: h' = h + tanh(conv(h)).
  std::vector<double> u;
  for (int i = 0; i < params.arch.num_blocks; ++i) {
    const std::vector<double>& hin = cache.h[std::size_t(i)];
    detail::conv_time_forward(hin, frames, channels, params.tensors[params.block_w(i)],
                              params.tensors[params.block_b(i)], kernel, u);
    auto& act = cache.act[std::size_t(i)];
    act.resize(frames * c);
    auto& hout = cache.h[std::size_t(i) + 1];
    hout.resize(frames * c);
    for (std::size_t j = 0; j < frames * c; ++j) {
      act[j] = std::tanh(u[j]);
      hout[j] = hin[j] + act[j];
    }
  }

  // Parallel heads.
  const std::vector<double>& hlast = cache.h.back();
  cache.r = RealGrid(frames, n);
  cache.i = RealGrid(frames, n);
  const Tensor& rw = params.tensors[params.head_r_w()];
  const Tensor& rb = params.tensors[params.head_r_b()];
  const Tensor& iw = params.tensors[params.head_i_w()];
  const Tensor& ib = params.tensors[params.head_i_b()];
  for (std::size_t f = 0; f < frames; ++f) {
    const double* hf = hlast.data() + f * c;
    for (std::size_t j = 0; j < n; ++j) {
      const double* rrow = rw.data.data() + j * c;
      const double* irow = iw.data.data() + j * c;
      double ar = 0.0, ai = 0.0;
      for (std::size_t ci = 0; ci < c; ++ci) {
        ar += rrow[ci] * hf[ci];
        ai += irow[ci] * hf[ci];
      }
      cache.r.at(f, j) = ar + rb.data[j];
      cache.i.at(f, j) = ai + ib.data[j];
    }
  }
}

inline std::pair<RealGrid, RealGrid> forward(const ModelParams& params,
                                             const LogAmpGrid& input) {
  ForwardCache cache;
  forward_cached(params, input, cache);
  return {std::move(cache.r), std::move(cache.i)};
}

// Elementwise four-quadrant angle of (R, I) in (-pi, pi]; (0, 0) maps to 0.
inline PhaseGrid phase_formula(const RealGrid& r, const RealGrid& i) {
  check_arg(r.same_shape(i), "phase_formula: shape mismatch");
  PhaseGrid out(r.frames, r.bins);
  for (std::size_t j = 0; j < out.size(); ++j) {
    out.data[j] = detail::angle_principal(i.data[j], r.data[j]);
  }
  return out;
}

}  // namespace lfsp

#endif  // LFSP_MODEL_HPP_
