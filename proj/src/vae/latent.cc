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

#include "uniedit/vae/latent.h"

#include <cmath>

#include "uniedit/common/error.h"

namespace uniedit::vae {

LatentDistribution SplitLatentParams(const Matrix& encoder_output) {
  if (encoder_output.cols() % 2 != 0) {
    throw ShapeError("latent projection width " +
                     std::to_string(encoder_output.cols()) + " is odd");
  }
  if (!encoder_output.allFinite()) {
    throw NumericError("latent projection contains non-finite values");
  }
  const Eigen::Index d = encoder_output.cols() / 2;
  LatentDistribution dist;
  dist.mean = encoder_output.leftCols(d);
  dist.logvar = encoder_output.rightCols(d).cwiseMax(kLogvarMin).cwiseMin(
      kLogvarMax);
  return dist;
}

LatentSequence Reparameterize(const LatentDistribution& dist, Rng& rng) {
  if (dist.mean.rows() != dist.logvar.rows() ||
      dist.mean.cols() != dist.logvar.cols()) {
    throw ShapeError("mean/logvar shape mismatch");
  }
  LatentSequence z;
  z.values.resize(dist.mean.rows(), dist.mean.cols());
  for (Eigen::Index t = 0; t < z.values.rows(); ++t) {
    for (Eigen::Index j = 0; j < z.values.cols(); ++j) {
      z.values(t, j) = dist.mean(t, j) +
                       std::exp(0.5 * dist.logvar(t, j)) * rng.Normal();
    }
  }
  return z;
}

double KlLoss(const LatentDistribution& dist) {
  if (dist.mean.size() == 0) return 0.0;
  if (dist.mean.rows() != dist.logvar.rows() ||
      dist.mean.cols() != dist.logvar.cols()) {
    throw ShapeError("mean/logvar shape mismatch");
  }
  const auto terms = dist.mean.array().square() + dist.logvar.array().exp() -
                     1.0 - dist.logvar.array();
  return 0.5 * terms.mean();
}

}  // namespace uniedit::vae
