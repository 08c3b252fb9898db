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

#include "uniedit/vae/attention_mask.h"

#include <algorithm>

#include "uniedit/common/error.h"

namespace uniedit::vae {

AttentionMask SlidingWindowCausalMask(int length, int window) {
  if (length < 0) throw ConfigError("mask length must be non-negative");
  if (window < 1) throw ConfigError("attention window must be >= 1");
  AttentionMask mask = AttentionMask::Constant(length, length, false);
  for (int i = 0; i < length; ++i) {
    for (int j = std::max(0, i - window + 1); j <= i; ++j) mask(i, j) = true;
  }
  return mask;
}

}  // namespace uniedit::vae
