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

#ifndef UNIEDIT_FORGE_PAIRS_H_
#define UNIEDIT_FORGE_PAIRS_H_

#include <string>
#include <string_view>
#include <vector>

#include "uniedit/audio/wav.h"
#include "uniedit/common/rng.h"

namespace uniedit::forge {

enum class TaskKind {
  kDeletion,
  kInsertion,
  kSubstitution,
  kDenoise,
  kSpeed,
  kPitch,
  kVolume,
  kAddSound,
  // Reserved in the schema; no constructor ships.
  kDialect,
  kEmotion,
};

std::string TaskName(TaskKind task);
TaskKind ParseTask(std::string_view name);
bool IsSemantic(TaskKind task);

// Half-open intervals.
struct SampleSpan {
  long begin = 0;
  long end = 0;
  long size() const { return end - begin; }
  bool operator==(const SampleSpan&) const = default;
};

struct FrameSpan {
  int begin = 0;
  int end = 0;
  int size() const { return end - begin; }
  bool empty() const { return end <= begin; }
  bool operator==(const FrameSpan&) const = default;
};

int FrameCount(const audio::Waveform& wave);

// [floor(begin / 320), ceil(end / 320)), clipped to `frame_count`.
FrameSpan SamplesToFrames(SampleSpan span, int frame_count);

struct AudioPair {
  audio::Waveform input;
  audio::Waveform target;
  FrameSpan edit_span_frames;  // in the target; empty for global tasks
};

// Input lacks `cut`; the target is the untouched original.
AudioPair ConstructInsertionPair(const audio::Waveform& audio, SampleSpan cut);

// Input has `artifact` spliced in at `insert_pos`; the target is the original.
// The target span is the single frame holding the splice junction.
AudioPair ConstructDeletionPair(const audio::Waveform& audio,
                                const audio::Waveform& artifact,
                                long insert_pos);

// The longer span is cropped from its end to the shorter length. The input is
// the original with dst overwritten by src samples.
AudioPair ConstructSubstitutionPair(const audio::Waveform& audio,
                                    SampleSpan src, SampleSpan dst);

inline constexpr double kDenoiseSnrMinDb = 0.0;
inline constexpr double kDenoiseSnrMaxDb = 20.0;

double SampleDenoiseSnr(Rng& rng);

// Noise is drawn from the pool with `rng`, then mixed at `snr_db`.
AudioPair ConstructDenoisePair(const audio::Waveform& clean,
                               const std::vector<audio::Waveform>& noise_pool,
                               double snr_db, Rng& rng);

// The inverse of denoising: background sound is added to the target.
AudioPair ConstructAddSoundPair(const audio::Waveform& clean,
                                const std::vector<audio::Waveform>& noise_pool,
                                double snr_db, Rng& rng);

AudioPair ConstructSpeedPair(const audio::Waveform& audio, double rate);
AudioPair ConstructPitchPair(const audio::Waveform& audio, double steps);
AudioPair ConstructVolumePair(const audio::Waveform& audio, double factor);

std::string SpeedInstruction(double rate);
std::string PitchInstruction(double steps);
std::string VolumeInstruction(double factor);
std::string DenoiseInstruction();
std::string AddSoundInstruction();

// Shortest decimal text that reads back to `value`.
std::string FormatNumber(double value);

inline constexpr double kDefaultEditWeight = 2.0;

// `weight` inside the span, 1 elsewhere. weight >= 1.
std::vector<double> BuildLossWeights(int frame_count, FrameSpan span,
                                     double weight = kDefaultEditWeight);

}  // namespace uniedit::forge

#endif  // UNIEDIT_FORGE_PAIRS_H_
