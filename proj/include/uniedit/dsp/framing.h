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

#ifndef UNIEDIT_DSP_FRAMING_H_
#define UNIEDIT_DSP_FRAMING_H_

#include <vector>

#include "uniedit/audio/wav.h"
#include "uniedit/common/matrix.h"

namespace uniedit::dsp {

// Samples per tokenizer frame; 16 kHz / 320 = 50 Hz.
inline constexpr int kFrameSamples = 320;

struct FrameSequence {
  Matrix frames;  // T x kFrameSamples
  double frame_rate = 0.0;

  int num_frames() const { return static_cast<int>(frames.rows()); }
};

// Non-overlapping 320-sample frames; the trailing partial frame is dropped.
// Requires a 16 kHz waveform (PreconditionError otherwise).
FrameSequence FrameWaveform(const audio::Waveform& wave);

// Row-major concatenation of the frames.
std::vector<double> FlattenFrames(const FrameSequence& seq);

}  // namespace uniedit::dsp

#endif  // UNIEDIT_DSP_FRAMING_H_
