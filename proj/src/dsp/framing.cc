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

#include "uniedit/dsp/framing.h"

#include "uniedit/common/error.h"

namespace uniedit::dsp {

FrameSequence FrameWaveform(const audio::Waveform& wave) {
  if (wave.sample_rate != audio::kPipelineSampleRate) {
    throw PreconditionError("framing requires 16000 Hz audio, got " +
                            std::to_string(wave.sample_rate) + " Hz");
  }
  const auto count = static_cast<Eigen::Index>(wave.size() / kFrameSamples);
  FrameSequence seq;
  seq.frame_rate = static_cast<double>(wave.sample_rate) / kFrameSamples;
  seq.frames.resize(count, kFrameSamples);
  for (Eigen::Index t = 0; t < count; ++t) {
    for (int j = 0; j < kFrameSamples; ++j) {
      seq.frames(t, j) = wave.samples[t * kFrameSamples + j];
    }
  }
  return seq;
}

std::vector<double> FlattenFrames(const FrameSequence& seq) {
  return std::vector<double>(seq.frames.data(),
                             seq.frames.data() + seq.frames.size());
}

}  // namespace uniedit::dsp
