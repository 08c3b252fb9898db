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

#include "uniedit/stop/stop_detector.h"

#include <algorithm>
#include <cmath>

#include "uniedit/common/error.h"

namespace uniedit::stop {
namespace {

// log(1 + exp(x)) without overflow.
double Softplus(double x) {
  return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

}  // namespace

std::vector<StopLabel> BuildStopLabels(std::span<const double> stop_scores) {
  const int t = static_cast<int>(stop_scores.size());
  if (t < 1) throw PreconditionError("stop labels need at least one frame");
  std::vector<StopLabel> labels(t, StopLabel::kUnused);
  labels[t - 1] = StopLabel::kPositive;
  const int ignore_begin = std::max(0, t - 1 - kIgnoreFrames);
  for (int i = ignore_begin; i < t - 1; ++i) labels[i] = StopLabel::kIgnore;
  if (ignore_begin > 0) {
    int best = 0;
    for (int i = 1; i < ignore_begin; ++i) {
      if (stop_scores[i] > stop_scores[best]) best = i;
    }
    labels[best] = StopLabel::kNegative;
  }
  return labels;
}

double StopLoss(std::span<const double> stop_logits,
                std::span<const StopLabel> labels) {
  if (stop_logits.size() != labels.size()) {
    throw ShapeError("stop loss: logits and labels differ in length");
  }
  double total = 0.0;
  int count = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    // BCE with logits: target 1 -> softplus(-x), target 0 -> softplus(x).
    if (labels[i] == StopLabel::kPositive) {
      total += Softplus(-stop_logits[i]);
      ++count;
    } else if (labels[i] == StopLabel::kNegative) {
      total += Softplus(stop_logits[i]);
      ++count;
    }
  }
  if (count == 0) return 0.0;
  return kStopLossScale * total / count;
}

}  // namespace uniedit::stop
