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

#ifndef UNIEDIT_VAE_LATENT_H_
#define UNIEDIT_VAE_LATENT_H_

#include "uniedit/common/matrix.h"
#include "uniedit/common/rng.h"

namespace uniedit::vae {

inline constexpr int kDefaultLatentDim = 32;
inline constexpr double kLogvarMin = -30.0;
inline constexpr double kLogvarMax = 20.0;

// Diagonal Gaussian posterior per frame, T x d_latent each.
struct LatentDistribution {
  Matrix mean;
  Matrix logvar;  // clamped to [kLogvarMin, kLogvarMax]
};

// Low-dimensional acoustic latents (T x d_latent).
struct LatentSequence {
  Matrix values;
};

// High-dimensional unified features (T x d_uni).
struct UnifiedSequence {
  Matrix values;
};

// Distillation target produced by a frozen semantic encoder (T x d_uni).
struct SemanticTarget {
  Matrix values;
};

// Encoder head output T x 2d: first d columns are the mean, the rest the
// log-variance (clamped). Odd width raises ShapeError.
LatentDistribution SplitLatentParams(const Matrix& encoder_output);

// z = mean + exp(logvar / 2) * eps, eps ~ N(0, I) drawn row-major from rng.
LatentSequence Reparameterize(const LatentDistribution& dist, Rng& rng);

// KL(q || N(0, I)) averaged over elements:
//   0.5 * mean(mean^2 + exp(logvar) - 1 - logvar).
double KlLoss(const LatentDistribution& dist);

}  // namespace uniedit::vae

#endif  // UNIEDIT_VAE_LATENT_H_
