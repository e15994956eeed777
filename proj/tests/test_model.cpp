// Tests for lfsp/model.hpp and lfsp/losses.hpp: initialization, the
// forward pass, the phase calculation formula and the anti-wrapping losses.
//
// Copyright 2026 lfsp authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0

#include "lfsp/model.hpp"

#include <gtest/gtest.h>

#include <numbers>

#include "lfsp/losses.hpp"
#include "test_helpers.hpp"

using namespace lfsp;

namespace {

constexpr double kPi = std::numbers::pi;

ModelArch tiny_arch() {
  ModelArch arch;
  arch.input_bins = 8;
  arch.channels = 8;
  arch.num_blocks = 1;
  arch.kernel_time = 3;
  return arch;
}

}  // namespace

TEST(InitParams, DeterministicPerSeed) {
  const ModelArch arch = tiny_arch();
  const ModelParams a = init_params(arch, 123);
  const ModelParams b = init_params(arch, 123);
  ASSERT_EQ(a.tensors.size(), b.tensors.size());
  for (std::size_t t = 0; t < a.tensors.size(); ++t) {
    EXPECT_EQ(a.tensors[t], b.tensors[t]);
  }
}

TEST(InitParams, DifferentSeedsDiffer) {
  const ModelParams a = init_params(tiny_arch(), 123);
  const ModelParams b = init_params(tiny_arch(), 124);
  bool any_diff = false;
  for (std::size_t t = 0; t < a.tensors.size(); ++t) {
    if (!(a.tensors[t] == b.tensors[t])) any_diff = true;
  }
  EXPECT_TRUE(any_diff);
}

TEST(InitParams, ParameterCountMatchesHandCount) {
  // channels=8, blocks=1, bins=8, kernel=3:
  //   in: 8*8 + 8, block: 8*8*3 + 8, heads: 2*(8*8 + 8)
  const ModelParams p = init_params(tiny_arch(), 5);
  std::size_t total = 0;
  for (const Tensor& t : p.tensors) total += t.size();
  EXPECT_EQ(total, std::size_t(8 * 8 + 8 + (8 * 8 * 3 + 8) + 2 * (8 * 8 + 8)));
  EXPECT_EQ(p.tensors.size(), p.tensor_count());
}

TEST(InitParams, RejectsBadArch) {
  ModelArch arch = tiny_arch();
  arch.channels = 4;
  EXPECT_THROW(init_params(arch, 1), std::invalid_argument);
  arch = tiny_arch();
  arch.kernel_time = 2;
  EXPECT_THROW(init_params(arch, 1), std::invalid_argument);
  arch = tiny_arch();
  arch.num_blocks = 0;
  EXPECT_THROW(init_params(arch, 1), std::invalid_argument);
}

TEST(Forward, OutputShapeMatchesInput) {
  const ModelParams p = init_params(tiny_arch(), 7);
  for (std::size_t frames : {std::size_t(1), std::size_t(4), std::size_t(9)}) {
    const LogAmpGrid in = lfsp_test::random_grid(frames, frames, 8, -3.0, 1.0);
    const auto [r, i] = forward(p, in);
    EXPECT_EQ(r.frames, frames);
    EXPECT_EQ(r.bins, 8u);
    EXPECT_EQ(i.frames, frames);
    EXPECT_EQ(i.bins, 8u);
  }
}

TEST(Forward, Deterministic) {
  const ModelParams p = init_params(tiny_arch(), 8);
  const LogAmpGrid in = lfsp_test::random_grid(50, 6, 8, -3.0, 1.0);
  const auto [r1, i1] = forward(p, in);
  const auto [r2, i2] = forward(p, in);
  EXPECT_EQ(r1, r2);
  EXPECT_EQ(i1, i2);
}

TEST(Forward, ZeroHeadsGiveZeroOutputs) {
  ModelParams p = init_params(tiny_arch(), 9);
  for (double& v : p.tensors[p.head_r_w()].data) v = 0.0;
  for (double& v : p.tensors[p.head_r_b()].data) v = 0.0;
  for (double& v : p.tensors[p.head_i_w()].data) v = 0.0;
  for (double& v : p.tensors[p.head_i_b()].data) v = 0.0;
  const LogAmpGrid in = lfsp_test::random_grid(51, 5, 8, -3.0, 1.0);
  const auto [r, i] = forward(p, in);
  for (double v : r.data) EXPECT_EQ(v, 0.0);
  for (double v : i.data) EXPECT_EQ(v, 0.0);

  LogAmpGrid doubled = in;
  for (double& v : doubled.data) v *= 2.0;
  const auto [r2, i2] = forward(p, doubled);
  for (double v : r2.data) EXPECT_EQ(v, 0.0);
  for (double v : i2.data) EXPECT_EQ(v, 0.0);
}

TEST(Forward, RejectsBinMismatch) {
  const ModelParams p = init_params(tiny_arch(), 10);
  const LogAmpGrid in(4, 9, 0.0);
  EXPECT_THROW(forward(p, in), std::invalid_argument);
}

TEST(PhaseFormula, QuadrantExamples) {
  RealGrid r(1, 3), i(1, 3);
  r.at(0, 0) = 1.0;  i.at(0, 0) = 0.0;
  r.at(0, 1) = 0.0;  i.at(0, 1) = -1.0;
  r.at(0, 2) = -1.0; i.at(0, 2) = 0.0;
  const PhaseGrid p = phase_formula(r, i);
  EXPECT_DOUBLE_EQ(p.at(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(p.at(0, 1), -kPi / 2.0);
  EXPECT_DOUBLE_EQ(p.at(0, 2), kPi);
}

TEST(PhaseFormula, ZeroPairMapsToZero) {
  const RealGrid r(2, 2, 0.0), i(2, 2, 0.0);
  const PhaseGrid p = phase_formula(r, i);
  for (double v : p.data) EXPECT_EQ(v, 0.0);
}

TEST(PhaseFormula, RangeAndScaleInvariance) {
  const RealGrid r = lfsp_test::random_grid(60, 6, 7, -2.0, 2.0);
  const RealGrid i = lfsp_test::random_grid(61, 6, 7, -2.0, 2.0);
  const PhaseGrid p = phase_formula(r, i);
  for (double v : p.data) {
    EXPECT_GT(v, -kPi);
    EXPECT_LE(v, kPi);
  }
  for (double c : {0.5, 3.0, 1e6}) {
    RealGrid rs = r, is = i;
    for (double& v : rs.data) v *= c;
    for (double& v : is.data) v *= c;
    const PhaseGrid ps = phase_formula(rs, is);
    for (std::size_t j = 0; j < p.size(); ++j) {
      EXPECT_NEAR(ps.data[j], p.data[j], 1e-12);
    }
  }
}

TEST(AntiWrap, ExamplesAndRange) {
  EXPECT_EQ(anti_wrap(0.0), 0.0);
  EXPECT_NEAR(anti_wrap(2.0 * kPi), 0.0, 1e-15);
  EXPECT_NEAR(anti_wrap(kPi + 0.1), kPi - 0.1, 1e-12);
  EXPECT_NEAR(anti_wrap(-0.3), 0.3, 1e-15);

  std::mt19937_64 rng(62);
  for (int trial = 0; trial < 1000; ++trial) {
    const double x = lfsp_test::urand_in(rng, -100.0, 100.0);
    const double v = anti_wrap(x);
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, kPi);
  }
}

TEST(IpLoss, Examples) {
  const PhaseGrid p = lfsp_test::random_phase_grid(63, 4, 5);
  EXPECT_EQ(ip_loss(p, p), 0.0);

  PhaseGrid shifted = p;
  for (double& v : shifted.data) v += 2.0 * kPi;
  EXPECT_NEAR(ip_loss(shifted, p), 0.0, 1e-9);

  PhaseGrid a(1, 1), b(1, 1);
  a.at(0, 0) = kPi / 2.0;
  b.at(0, 0) = 0.0;
  EXPECT_DOUBLE_EQ(ip_loss(a, b), kPi / 2.0);

  const PhaseGrid c(2, 2, 0.0);
  EXPECT_THROW(ip_loss(a, c), std::invalid_argument);
}

TEST(GdIafLoss, TwoByTwoExample) {
  PhaseGrid target(2, 2, 0.0);
  PhaseGrid pred(2, 2, 0.0);
  pred.at(1, 0) = kPi / 2.0;
  EXPECT_DOUBLE_EQ(iaf_loss(pred, target), kPi / 4.0);
  EXPECT_DOUBLE_EQ(gd_loss(pred, target), kPi / 4.0);
}

TEST(GdIafLoss, IdenticalGridsGiveZero) {
  const PhaseGrid p = lfsp_test::random_phase_grid(64, 5, 6);
  EXPECT_EQ(gd_loss(p, p), 0.0);
  EXPECT_EQ(iaf_loss(p, p), 0.0);
}

TEST(GdIafLoss, FrameOffsetInvariance) {
  const PhaseGrid target = lfsp_test::random_phase_grid(65, 5, 6);
  const PhaseGrid pred = lfsp_test::random_phase_grid(66, 5, 6);
  PhaseGrid lifted = pred;
  for (std::size_t n = 0; n < lifted.bins; ++n) lifted.at(2, n) += 2.0 * kPi;
  EXPECT_NEAR(gd_loss(lifted, target), gd_loss(pred, target), 1e-9);
  EXPECT_NEAR(iaf_loss(lifted, target), iaf_loss(pred, target), 1e-9);
}

TEST(GdIafLoss, RejectsTooSmallGrids) {
  const PhaseGrid one_bin(3, 1, 0.0);
  EXPECT_THROW(gd_loss(one_bin, one_bin), std::invalid_argument);
  const PhaseGrid one_frame(1, 3, 0.0);
  EXPECT_THROW(iaf_loss(one_frame, one_frame), std::invalid_argument);
}

TEST(Losses, WrapInvarianceUnderIntegerMultiples) {
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 100; ++trial) {
    const PhaseGrid target = lfsp_test::random_phase_grid(1000 + trial, 4, 5);
    const PhaseGrid pred = lfsp_test::random_phase_grid(2000 + trial, 4, 5);
    PhaseGrid lifted = pred;
    for (double& v : lifted.data) {
      const int k = int(lfsp_test::urand_in(rng, -5.0, 5.0));
      v += 2.0 * kPi * double(k);
    }
    EXPECT_NEAR(ip_loss(lifted, target), ip_loss(pred, target), 1e-9);
  }
}

TEST(Losses, IpSymmetryAndBound) {
  const PhaseGrid a = lfsp_test::random_phase_grid(68, 6, 4);
  const PhaseGrid b = lfsp_test::random_phase_grid(69, 6, 4);
  EXPECT_DOUBLE_EQ(ip_loss(a, b), ip_loss(b, a));
  EXPECT_GE(ip_loss(a, b), 0.0);
  EXPECT_LE(ip_loss(a, b), kPi);
}

TEST(LossWeights, Validation) {
  EXPECT_NO_THROW(LossWeights{}.validate());
  EXPECT_THROW((LossWeights{0.0, 0.0, 0.0}).validate(), std::invalid_argument);
  EXPECT_THROW((LossWeights{-1.0, 1.0, 1.0}).validate(), std::invalid_argument);
}
