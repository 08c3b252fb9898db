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

#include "uniedit/vae/losses.h"

#include <algorithm>
#include <cmath>

#include "uniedit/common/error.h"

namespace uniedit::vae {
namespace {

double MeanRelu(const Vector& v, double sign, double margin) {
  if (v.size() == 0) throw ShapeError("empty discriminator output");
  return (margin + sign * v.array()).cwiseMax(0.0).mean();
}

}  // namespace

double AdversarialLoss(const DiscriminatorScores& fake_scores) {
  if (fake_scores.empty()) throw ShapeError("no sub-discriminator scores");
  double total = 0.0;
  for (const auto& s : fake_scores) total += MeanRelu(s, -1.0, 1.0);
  return total / static_cast<double>(fake_scores.size());
}

double DiscriminatorLoss(const DiscriminatorScores& real_scores,
                         const DiscriminatorScores& fake_scores) {
  if (real_scores.empty() || real_scores.size() != fake_scores.size()) {
    throw ShapeError("real/fake sub-discriminator counts differ or are zero");
  }
  double total = 0.0;
  for (std::size_t k = 0; k < real_scores.size(); ++k) {
    total += MeanRelu(real_scores[k], -1.0, 1.0) +
             MeanRelu(fake_scores[k], 1.0, 1.0);
  }
  return total / static_cast<double>(real_scores.size());
}

double FeatureMatchingLoss(const DiscriminatorFeatures& real_features,
                           const DiscriminatorFeatures& fake_features) {
  if (real_features.empty() || real_features.size() != fake_features.size()) {
    throw ShapeError("feature layer counts differ or are zero");
  }
  double total = 0.0;
  for (std::size_t l = 0; l < real_features.size(); ++l) {
    const Vector& r = real_features[l];
    const Vector& f = fake_features[l];
    if (r.size() != f.size() || r.size() == 0) {
      throw ShapeError("feature layer " + std::to_string(l) +
                       " has mismatched or empty shape");
    }
    const double scale = std::max(r.cwiseAbs().mean(), 1e-8);
    total += (r - f).cwiseAbs().mean() / scale;
  }
  return total / static_cast<double>(real_features.size());
}

double GeneratorLoss(const GeneratorLossParts& parts,
                     const LossWeights& weights) {
  return weights.rec * parts.rec + weights.adv * parts.adv +
         weights.fm * parts.fm + weights.kl * parts.kl;
}

double DistillLoss(const UnifiedSequence& z_uni, const SemanticTarget& z_sem) {
  if (z_uni.values.rows() != z_sem.values.rows() ||
      z_uni.values.cols() != z_sem.values.cols()) {
    throw ShapeError("distillation shapes differ");
  }
  if (z_uni.values.size() == 0) return 0.0;
  return (z_uni.values - z_sem.values).array().square().mean();
}

double AlignLoss(const Matrix& token_logits, std::span<const int> targets) {
  if (static_cast<Eigen::Index>(targets.size()) != token_logits.rows()) {
    throw ShapeError("align loss: " + std::to_string(targets.size()) +
                     " targets for " + std::to_string(token_logits.rows()) +
                     " positions");
  }
  const Eigen::Index vocab = token_logits.cols();
  double total = 0.0;
  for (Eigen::Index t = 0; t < token_logits.rows(); ++t) {
    const int y = targets[t];
    if (y < 0 || y >= vocab) {
      throw IndexError("target id " + std::to_string(y) + " at position " +
                       std::to_string(t) + " outside vocabulary of " +
                       std::to_string(vocab));
    }
    const auto row = token_logits.row(t);
    const double peak = row.maxCoeff();
    const double lse = peak + std::log((row.array() - peak).exp().sum());
    total += lse - row(y);
  }
  return total;
}

double Stage3Loss(double align, double rec, const Stage3Weights& weights) {
  return weights.align * align + weights.rec * rec;
}

}  // namespace uniedit::vae
