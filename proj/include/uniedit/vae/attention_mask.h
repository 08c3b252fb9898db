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

#ifndef UNIEDIT_VAE_ATTENTION_MASK_H_
#define UNIEDIT_VAE_ATTENTION_MASK_H_

#include <Eigen/Dense>

namespace uniedit::vae {

inline constexpr int kTokenizerAttentionWindow = 32;

using AttentionMask = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

// mask(i, j) is true iff max(0, i - window + 1) <= j <= i.
AttentionMask SlidingWindowCausalMask(int length,
                                      int window = kTokenizerAttentionWindow);

}  // namespace uniedit::vae

#endif  // UNIEDIT_VAE_ATTENTION_MASK_H_
