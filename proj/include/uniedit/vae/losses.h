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

#ifndef UNIEDIT_VAE_LOSSES_H_
#define UNIEDIT_VAE_LOSSES_H_

#include <span>
#include <vector>

#include "uniedit/common/matrix.h"
#include "uniedit/vae/latent.h"

namespace uniedit::vae {

// Stage-1 generator weights plus the stage-3 alignment weight.
struct LossWeights {
  double rec = 15.0;
  double adv = 1.0;
  double fm = 1.0;
  double kl = 1e-4;
  double align = 2.0;
};

// The joint alignment stage re-weights reconstruction to 1.
struct Stage3Weights {
  double align = 2.0;
  double rec = 1.0;
};

// Per-sub-discriminator logits, any shape flattened.
using DiscriminatorScores = std::vector<Vector>;
// Intermediate discriminator activations, one entry per layer (across all
// sub-discriminators), flattened.
using DiscriminatorFeatures = std::vector<Vector>;

// Hinge generator term: mean over sub-discriminators of mean(relu(1 - s)).
double AdversarialLoss(const DiscriminatorScores& fake_scores);

// Hinge discriminator term, summed real/fake parts averaged over
// sub-discriminators.
double DiscriminatorLoss(const DiscriminatorScores& real_scores,
                         const DiscriminatorScores& fake_scores);

// Mean over layers of mean|real - fake| / mean|real|. The normalizer comes
// from the real side only and is floored at 1e-8.
double FeatureMatchingLoss(const DiscriminatorFeatures& real_features,
                           const DiscriminatorFeatures& fake_features);

struct GeneratorLossParts {
  double rec = 0.0;
  double adv = 0.0;
  double fm = 0.0;
  double kl = 0.0;
};

double GeneratorLoss(const GeneratorLossParts& parts,
                     const LossWeights& weights = {});

// Mean squared error between unified features and the semantic target.
double DistillLoss(const UnifiedSequence& z_uni, const SemanticTarget& z_sem);

// Sum over positions of -log softmax(logits[t])[targets[t]].
double AlignLoss(const Matrix& token_logits, std::span<const int> targets);

double Stage3Loss(double align, double rec, const Stage3Weights& weights = {});

}  // namespace uniedit::vae

#endif  // UNIEDIT_VAE_LOSSES_H_
