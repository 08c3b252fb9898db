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

#ifndef UNIEDIT_STOP_STOP_DETECTOR_H_
#define UNIEDIT_STOP_STOP_DETECTOR_H_

#include <span>
#include <vector>

namespace uniedit::stop {

enum class StopLabel { kUnused, kPositive, kNegative, kIgnore };

// Frames before the last one that are excluded from supervision. Defined on
// the 10 Hz compressed timeline, where three frames span 300 ms.
inline constexpr int kIgnoreFrames = 3;
inline constexpr double kStopLossScale = 0.01;

// Weak stop supervision for one utterance of T = scores.size() frames:
// frame T-1 positive, frames T-4..T-2 ignored, and the highest-scoring frame
// in [0, T-4) negative (lowest index on ties). Short clips get no negative.
// Labels are recomputed from the current scores on every call.
std::vector<StopLabel> BuildStopLabels(std::span<const double> stop_scores);

// 0.01 x mean binary cross-entropy (with logits) over the positive and
// negative frames; other frames do not contribute.
double StopLoss(std::span<const double> stop_logits,
                std::span<const StopLabel> labels);

}  // namespace uniedit::stop

#endif  // UNIEDIT_STOP_STOP_DETECTOR_H_
