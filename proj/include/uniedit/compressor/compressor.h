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

#ifndef UNIEDIT_COMPRESSOR_COMPRESSOR_H_
#define UNIEDIT_COMPRESSOR_COMPRESSOR_H_

#include "uniedit/common/matrix.h"
#include "uniedit/vae/latent.h"

namespace uniedit::compressor {

enum class CompressionMode { kMeanPool, kClsAttention };

struct CompressorConfig {
  int factor = 5;  // 50 Hz -> 10 Hz
  CompressionMode mode = CompressionMode::kMeanPool;
};

// One forward-only attention layer with a learned [CLS] query. Keys are
// chunk rows projected by `key_proj` (d x d_k); values are the chunk rows
// themselves, so every output is a convex combination of its chunk.
struct ClsAttentionParams {
  Vector cls_query;  // d_k
  Matrix key_proj;   // d x d_k
};

// Chunk i covers rows [i*p, (i+1)*p); output row i is their mean. Remainder
// rows are dropped, so the output has floor(T / p) rows.
vae::UnifiedSequence PoolCompress(const vae::UnifiedSequence& z,
                                  const CompressorConfig& config);

// Softmax attention weights for one chunk (rows of `chunk`), scaled by
// 1/sqrt(d_k).
Vector ClsAttentionWeights(const Matrix& chunk,
                           const ClsAttentionParams& params);

vae::UnifiedSequence ClsAttentionCompress(const vae::UnifiedSequence& z,
                                          const CompressorConfig& config,
                                          const ClsAttentionParams& params);

// Dispatches on config.mode; params are required for kClsAttention.
vae::UnifiedSequence Compress(const vae::UnifiedSequence& z,
                              const CompressorConfig& config,
                              const ClsAttentionParams* params = nullptr);

}  // namespace uniedit::compressor

#endif  // UNIEDIT_COMPRESSOR_COMPRESSOR_H_
