// Copyright 2026 The UniEdit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>

#include <gtest/gtest.h>

#include "support/oracles.h"
#include "uniedit/common/error.h"
#include "uniedit/flow/flow_matching.h"
#include "uniedit/flow/toy_training.h"
#include "uniedit/flow/velocity_net.h"

namespace uniedit::flow {
namespace {

Vector V2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

TEST(FlowMatchingTest, Interpolation) {
  const FlowSample s{V2(0, 0), V2(2, 4), 0.5};
  EXPECT_EQ(OtInterpolate(s), V2(1, 2));
  EXPECT_EQ(OtInterpolate({V2(3, -1), V2(2, 4), 0.0}), V2(3, -1));
  EXPECT_EQ(OtInterpolate({V2(3, -1), V2(2, 4), 1.0}), V2(2, 4));
  EXPECT_THROW(OtInterpolate({V2(0, 0), V2(1, 1), 1.5}), PreconditionError);
  EXPECT_THROW(OtInterpolate({V2(0, 0), Vector::Zero(3), 0.5}), ShapeError);
}

TEST(FlowMatchingTest, VelocityTarget) {
  EXPECT_EQ(VelocityTarget({V2(1, 1), V2(1, 1), 0.3}), V2(0, 0));
  EXPECT_EQ(VelocityTarget({V2(1, 1), V2(3, 0), 0.3}), V2(2, -1));
  EXPECT_EQ(VelocityTarget({V2(1, 1), V2(3, 0), 0.1}),
            VelocityTarget({V2(1, 1), V2(3, 0), 0.9}));
}

TEST(FlowMatchingTest, FmLoss) {
  const FlowSample s{V2(1, 1), V2(3, 0), 0.2};
  EXPECT_EQ(FmLoss(V2(2, -1), s), 0.0);
  EXPECT_NEAR(FmLoss(V2(2.5, -0.5), s), 0.25, 1e-15);
  Rng rng(1);
  for (int i = 0; i < 50; ++i) {
    Vector x0(4), x1(4), v(4);
    for (int j = 0; j < 4; ++j) {
      x0(j) = rng.Normal();
      x1(j) = rng.Normal();
      v(j) = rng.Normal();
    }
    double brute = 0.0;
    for (int j = 0; j < 4; ++j) {
      brute += (v(j) - (x1(j) - x0(j))) * (v(j) - (x1(j) - x0(j)));
    }
    EXPECT_NEAR(FmLoss(v, {x0, x1, 0.5}), brute / 4.0, 1e-14);
  }
}

TEST(FlowMatchingTest, Guidance) {
  const Vector c = V2(1, 2), u = V2(-1, 0.5);
  EXPECT_EQ(CfgVelocity(c, u, 1.0), c);
  EXPECT_EQ(CfgVelocity(c, u, 0.0), u);
  EXPECT_EQ(CfgVelocity(c, c, 7.0), c);
  EXPECT_LT((CfgVelocity(c, u, 2.0) - V2(3, 3.5)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(FlowMatchingTest, DropCondition) {
  Rng rng(2);
  for (int i = 0; i < 1000; ++i) {
    EXPECT_FALSE(DropCondition(rng, 0.0));
    EXPECT_TRUE(DropCondition(rng, 1.0));
  }
  int drops = 0;
  for (int i = 0; i < 100000; ++i) drops += DropCondition(rng, 0.1);
  EXPECT_GE(drops, 9400);
  EXPECT_LE(drops, 10600);
  EXPECT_THROW(DropCondition(rng, 1.5), ConfigError);
}

TEST(FlowMatchingTest, EulerExactOnOtField) {
  const Vector x0 = V2(0.3, -1.2), x1 = V2(2.5, 0.7);
  const VelocityFn field = [&](const Vector&, double) { return Vector(x1 - x0); };
  for (int steps : {1, 4, 32, 100}) {
    EXPECT_LT((EulerSample(field, x0, steps) - x1).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(FlowMatchingTest, EulerSingleStep) {
  const VelocityFn field = [](const Vector& x, double t) {
    return Vector(x * 2.0 + Vector::Constant(x.size(), t + 1.0));
  };
  const Vector x0 = V2(1, -1);
  EXPECT_EQ(EulerSample(field, x0, 1), Vector(x0 + field(x0, 0.0)));
}

TEST(FlowMatchingTest, EulerLinearDecay) {
  const VelocityFn field = [](const Vector& x, double) { return Vector(-x); };
  Vector x0(1);
  x0 << 1.0;
  EXPECT_NEAR(EulerSample(field, x0, 1000)(0), std::exp(-1.0), 1e-3);
}

TEST(FlowMatchingTest, EulerErrors) {
  const VelocityFn bad = [](const Vector& x, double t) {
    Vector v = Vector::Zero(x.size());
    if (t >= 0.5) v(0) = std::nan("");
    return v;
  };
  try {
    EulerSample(bad, V2(0, 0), 4);
    FAIL();
  } catch (const NumericError& e) {
    EXPECT_NE(std::string(e.what()).find("step 2"), std::string::npos) << e.what();
  }
  EXPECT_THROW(EulerSample(bad, V2(0, 0), 0), ConfigError);
}

TEST(VelocityNetTest, ZeroWeightsZeroVelocity) {
  std::vector<DenseLayer> layers = {
      {Matrix::Zero(5, 2 + 1 + 3), Vector::Zero(5)},
      {Matrix::Zero(2, 5), Vector::Zero(2)}};
  const VelocityNet net(2, 3, layers);
  EXPECT_EQ(net.Forward(V2(1, 2), 0.5, Vector::Ones(3)), V2(0, 0));
}

TEST(VelocityNetTest, ShapeErrorNamesLayer) {
  std::vector<DenseLayer> layers = {
      {Matrix::Zero(5, 6), Vector::Zero(5)},
      {Matrix::Zero(2, 4), Vector::Zero(2)}};
  try {
    VelocityNet net(2, 3, layers);
    FAIL();
  } catch (const ShapeError& e) {
    EXPECT_NE(std::string(e.what()).find("layer 1"), std::string::npos) << e.what();
  }
  Rng rng(3);
  const auto net = VelocityNet::Random(2, 3, {4}, rng);
  EXPECT_THROW(net.Forward(V2(1, 2), 0.5, Vector::Ones(2)), ShapeError);
}

TEST(VelocityNetTest, ParametersRoundTrip) {
  Rng rng(4);
  auto net = VelocityNet::Random(3, 2, {8, 8}, rng);
  auto params = net.Parameters();
  EXPECT_EQ(params.size(), net.NumParameters());
  EXPECT_EQ(params.size(), (8u * 6 + 8) + (8u * 8 + 8) + (3u * 8 + 3));
  for (auto& p : params) p *= 0.5;
  net.SetParameters(params);
  EXPECT_EQ(net.Parameters(), params);
  EXPECT_THROW(net.SetParameters({1.0}), ShapeError);
}

TEST(VelocityNetTest, LossMatchesPerSampleFmLoss) {
  Rng rng(5);
  const auto net = VelocityNet::Random(2, 3, {6}, rng);
  const auto batch = uniedit::testing::RandomFlowBatch(7, 2, 3, rng);
  double total = 0.0;
  for (int i = 0; i < 7; ++i) {
    const FlowSample s{batch.x0.row(i).transpose(), batch.x1.row(i).transpose(),
                       batch.t(i)};
    total += FmLoss(net.Forward(OtInterpolate(s), s.t, batch.cond.row(i).transpose()), s);
  }
  EXPECT_NEAR(net.Loss(batch), total / 7.0, 1e-12);
}

TEST(VelocityNetTest, GradientMatchesFiniteDifferences) {
  Rng rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    const auto net = VelocityNet::Random(2, 3, {16, 16, 16}, rng);
    const auto batch = uniedit::testing::RandomFlowBatch(8, 2, 3, rng);
    EXPECT_LT(uniedit::testing::MaxGradientRelativeError(net, batch), 1e-4);
  }
}

TEST(VelocityNetTest, BackwardReturnsLoss) {
  Rng rng(7);
  const auto net = VelocityNet::Random(2, 1, {4}, rng);
  const auto batch = uniedit::testing::RandomFlowBatch(5, 2, 1, rng);
  std::vector<double> grad;
  EXPECT_DOUBLE_EQ(net.Backward(batch, grad), net.Loss(batch));
}

TEST(ToyTrainingTest, ShortRunReducesLossDeterministically) {
  ToyFlowConfig cfg;
  cfg.seed = 3;
  cfg.steps = 300;
  cfg.hidden = {32, 32, 32};
  cfg.samples_per_class = 8;
  const auto a = TrainToyFlow(cfg);
  const auto b = TrainToyFlow(cfg);
  EXPECT_LT(a.final_loss, a.initial_loss / 3.0);
  EXPECT_EQ(ToyFlowReport(cfg, a).dump(), ToyFlowReport(cfg, b).dump());
  ASSERT_FALSE(a.log.empty());
  EXPECT_EQ(a.log.front().step, 0);
  EXPECT_EQ(a.log.back().step, 300);
}

}  // namespace
}  // namespace uniedit::flow
