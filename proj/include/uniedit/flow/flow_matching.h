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

#ifndef UNIEDIT_FLOW_FLOW_MATCHING_H_
#define UNIEDIT_FLOW_FLOW_MATCHING_H_

#include <functional>

#include "uniedit/common/matrix.h"
#include "uniedit/common/rng.h"

namespace uniedit::flow {

// One training draw on the straight noise-to-data path.
struct FlowSample {
  Vector x0;  // noise, x0 ~ N(0, I)
  Vector x1;  // data latent (a row of Z_latent)
  double t = 0.0;
};

struct GuidanceConfig {
  double cfg_weight = 2.0;
  double cond_dropout_prob = 0.1;
};

struct SamplerConfig {
  int steps = 32;
};

// Throws ShapeError / PreconditionError on mismatched sizes, t outside
// [0, 1] or non-finite entries.
void ValidateSample(const FlowSample& sample);

// x_t = (1 - t) x0 + t x1.
Vector OtInterpolate(const FlowSample& sample);

// u = x1 - x0; independent of t.
Vector VelocityTarget(const FlowSample& sample);

// Mean squared error between a predicted velocity and VelocityTarget.
double FmLoss(const Vector& predicted_velocity, const FlowSample& sample);

// v_uncond + w (v_cond - v_uncond).
Vector CfgVelocity(const Vector& v_cond, const Vector& v_uncond, double w);

// True with probability `prob`; consumes exactly one uniform draw.
bool DropCondition(Rng& rng, double prob);

using VelocityFn = std::function<Vector(const Vector& x, double t)>;

// Forward Euler on [0, 1]: x += v(x, k/steps) / steps for k = 0..steps-1.
// A non-finite velocity raises NumericError naming the step.
Vector EulerSample(const VelocityFn& velocity, const Vector& x0, int steps);

}  // namespace uniedit::flow

#endif  // UNIEDIT_FLOW_FLOW_MATCHING_H_
