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

#include "uniedit/flow/flow_matching.h"

#include "uniedit/common/error.h"

namespace uniedit::flow {

void ValidateSample(const FlowSample& sample) {
  if (sample.x0.size() != sample.x1.size()) {
    throw ShapeError("flow sample: x0 and x1 differ in dimension");
  }
  if (!(sample.t >= 0.0 && sample.t <= 1.0)) {
    throw PreconditionError("flow sample: t outside [0, 1]");
  }
  if (!sample.x0.allFinite() || !sample.x1.allFinite()) {
    throw NumericError("flow sample: non-finite entries");
  }
}

Vector OtInterpolate(const FlowSample& sample) {
  ValidateSample(sample);
  return (1.0 - sample.t) * sample.x0 + sample.t * sample.x1;
}

Vector VelocityTarget(const FlowSample& sample) {
  ValidateSample(sample);
  return sample.x1 - sample.x0;
}

double FmLoss(const Vector& predicted_velocity, const FlowSample& sample) {
  const Vector target = VelocityTarget(sample);
  if (predicted_velocity.size() != target.size()) {
    throw ShapeError("fm loss: prediction dimension mismatch");
  }
  if (target.size() == 0) return 0.0;
  return (predicted_velocity - target).squaredNorm() /
         static_cast<double>(target.size());
}

Vector CfgVelocity(const Vector& v_cond, const Vector& v_uncond, double w) {
  if (v_cond.size() != v_uncond.size()) {
    throw ShapeError("cfg: conditional/unconditional dimension mismatch");
  }
  return v_uncond + w * (v_cond - v_uncond);
}

bool DropCondition(Rng& rng, double prob) {
  if (!(prob >= 0.0 && prob <= 1.0)) {
    throw ConfigError("condition dropout probability outside [0, 1]");
  }
  return rng.Uniform() < prob;
}

Vector EulerSample(const VelocityFn& velocity, const Vector& x0, int steps) {
  if (steps < 1) throw ConfigError("Euler sampler needs steps >= 1");
  Vector x = x0;
  const double dt = 1.0 / steps;
  for (int k = 0; k < steps; ++k) {
    const Vector v = velocity(x, static_cast<double>(k) / steps);
    if (v.size() != x.size()) {
      throw ShapeError("velocity field returned wrong dimension at step " +
                       std::to_string(k));
    }
    if (!v.allFinite()) {
      throw NumericError("non-finite velocity at Euler step " +
                         std::to_string(k));
    }
    x += dt * v;
  }
  return x;
}

}  // namespace uniedit::flow
