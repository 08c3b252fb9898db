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

#include "uniedit/compressor/compressor.h"

#include <cmath>

#include "uniedit/common/error.h"

namespace uniedit::compressor {
namespace {

void CheckFactor(const CompressorConfig& config) {
  if (config.factor < 1) {
    throw ConfigError("compression factor must be >= 1, got " +
                      std::to_string(config.factor));
  }
}

}  // namespace

vae::UnifiedSequence PoolCompress(const vae::UnifiedSequence& z,
                                  const CompressorConfig& config) {
  CheckFactor(config);
  const Eigen::Index p = config.factor;
  const Eigen::Index out_len = z.values.rows() / p;
  vae::UnifiedSequence out;
  out.values.resize(out_len, z.values.cols());
  // Accumulate in frame order so results do not depend on SIMD reduction.
  for (Eigen::Index i = 0; i < out_len; ++i) {
    for (Eigen::Index j = 0; j < z.values.cols(); ++j) {
      double sum = 0.0;
      for (Eigen::Index k = 0; k < p; ++k) sum += z.values(i * p + k, j);
      out.values(i, j) = sum / static_cast<double>(p);
    }
  }
  return out;
}

Vector ClsAttentionWeights(const Matrix& chunk,
                           const ClsAttentionParams& params) {
  if (params.key_proj.rows() != chunk.cols() ||
      params.key_proj.cols() != params.cls_query.size()) {
    throw ShapeError("cls attention: key projection is " +
                     std::to_string(params.key_proj.rows()) + "x" +
                     std::to_string(params.key_proj.cols()) + ", features " +
                     std::to_string(chunk.cols()) + ", query " +
                     std::to_string(params.cls_query.size()));
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(
                                  std::max<Eigen::Index>(1, params.cls_query.size())));
  Vector logits = (chunk * params.key_proj) * params.cls_query * scale;
  const double peak = logits.maxCoeff();
  Vector w = (logits.array() - peak).exp();
  return w / w.sum();
}

vae::UnifiedSequence ClsAttentionCompress(const vae::UnifiedSequence& z,
                                          const CompressorConfig& config,
                                          const ClsAttentionParams& params) {
  CheckFactor(config);
  const Eigen::Index p = config.factor;
  const Eigen::Index out_len = z.values.rows() / p;
  vae::UnifiedSequence out;
  out.values.resize(out_len, z.values.cols());
  for (Eigen::Index i = 0; i < out_len; ++i) {
    const Matrix chunk = z.values.middleRows(i * p, p);
    const Vector w = ClsAttentionWeights(chunk, params);
    out.values.row(i) = w.transpose() * chunk;
  }
  return out;
}

vae::UnifiedSequence Compress(const vae::UnifiedSequence& z,
                              const CompressorConfig& config,
                              const ClsAttentionParams* params) {
  if (config.mode == CompressionMode::kMeanPool) return PoolCompress(z, config);
  if (params == nullptr) {
    throw ConfigError("cls_attention compression requires parameters");
  }
  return ClsAttentionCompress(z, config, *params);
}

}  // namespace uniedit::compressor
