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

#include "uniedit/forge/pairs.h"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>

#include "uniedit/common/error.h"
#include "uniedit/dsp/effects.h"
#include "uniedit/dsp/framing.h"

namespace uniedit::forge {
namespace {

using audio::Waveform;

constexpr std::array<std::pair<TaskKind, const char*>, 10> kTaskNames = {{
    {TaskKind::kDeletion, "deletion"},
    {TaskKind::kInsertion, "insertion"},
    {TaskKind::kSubstitution, "substitution"},
    {TaskKind::kDenoise, "denoise"},
    {TaskKind::kSpeed, "speed"},
    {TaskKind::kPitch, "pitch"},
    {TaskKind::kVolume, "volume"},
    {TaskKind::kAddSound, "add_sound"},
    {TaskKind::kDialect, "dialect"},
    {TaskKind::kEmotion, "emotion"},
}};

void CheckSpan(SampleSpan span, long n, const char* what) {
  if (span.begin < 0 || span.end > n || span.begin >= span.end) {
    throw BoundsError(std::string(what) + " span [" + std::to_string(span.begin) +
                      ", " + std::to_string(span.end) + ") invalid for " +
                      std::to_string(n) + " samples");
  }
}

Waveform WithSamples(const Waveform& like, std::vector<double> samples) {
  Waveform w;
  w.sample_rate = like.sample_rate;
  w.samples = std::move(samples);
  return w;
}

const Waveform& PickNoise(const std::vector<Waveform>& pool, Rng& rng) {
  if (pool.empty()) throw PreconditionError("noise pool is empty");
  return pool[rng.UniformInt(0, static_cast<int64_t>(pool.size()) - 1)];
}

}  // namespace

std::string TaskName(TaskKind task) {
  for (const auto& [k, name] : kTaskNames) {
    if (k == task) return name;
  }
  return "unknown";
}

TaskKind ParseTask(std::string_view name) {
  for (const auto& [k, n] : kTaskNames) {
    if (name == n) return k;
  }
  throw ValidationError("unknown task '" + std::string(name) + "'");
}

bool IsSemantic(TaskKind task) {
  return task == TaskKind::kDeletion || task == TaskKind::kInsertion ||
         task == TaskKind::kSubstitution;
}

int FrameCount(const Waveform& wave) {
  return static_cast<int>(wave.samples.size() / dsp::kFrameSamples);
}

FrameSpan SamplesToFrames(SampleSpan span, int frame_count) {
  const long f = dsp::kFrameSamples;
  const int begin = static_cast<int>(span.begin / f);
  const int end = static_cast<int>((span.end + f - 1) / f);
  FrameSpan out{std::min(begin, frame_count), std::min(end, frame_count)};
  return out;
}

AudioPair ConstructInsertionPair(const Waveform& audio, SampleSpan cut) {
  const long n = static_cast<long>(audio.samples.size());
  CheckSpan(cut, n, "cut");
  std::vector<double> input(audio.samples.begin(), audio.samples.begin() + cut.begin);
  input.insert(input.end(), audio.samples.begin() + cut.end, audio.samples.end());
  AudioPair pair{WithSamples(audio, std::move(input)), audio, {}};
  pair.edit_span_frames = SamplesToFrames(cut, FrameCount(audio));
  return pair;
}

AudioPair ConstructDeletionPair(const Waveform& audio, const Waveform& artifact,
                                long insert_pos) {
  const long n = static_cast<long>(audio.samples.size());
  if (insert_pos < 0 || insert_pos > n) {
    throw BoundsError("insert position " + std::to_string(insert_pos) +
                      " outside [0, " + std::to_string(n) + "]");
  }
  if (artifact.samples.empty()) throw PreconditionError("artifact is empty");
  if (artifact.sample_rate != audio.sample_rate) {
    throw PreconditionError("artifact sample rate differs from audio");
  }
  std::vector<double> input(audio.samples.begin(), audio.samples.begin() + insert_pos);
  input.insert(input.end(), artifact.samples.begin(), artifact.samples.end());
  input.insert(input.end(), audio.samples.begin() + insert_pos, audio.samples.end());
  AudioPair pair{WithSamples(audio, std::move(input)), audio, {}};
  const int frames = FrameCount(audio);
  if (frames > 0) {
    const int f = std::min<int>(static_cast<int>(insert_pos / dsp::kFrameSamples),
                                frames - 1);
    pair.edit_span_frames = {f, f + 1};
  }
  return pair;
}

AudioPair ConstructSubstitutionPair(const Waveform& audio, SampleSpan src,
                                    SampleSpan dst) {
  const long n = static_cast<long>(audio.samples.size());
  CheckSpan(src, n, "source");
  CheckSpan(dst, n, "destination");
  if (src.begin < dst.end && dst.begin < src.end) {
    throw ValidationError("source and destination spans overlap");
  }
  const long len = std::min(src.size(), dst.size());
  src.end = src.begin + len;
  dst.end = dst.begin + len;
  std::vector<double> input = audio.samples;
  std::copy(audio.samples.begin() + src.begin, audio.samples.begin() + src.end,
            input.begin() + dst.begin);
  AudioPair pair{WithSamples(audio, std::move(input)), audio, {}};
  pair.edit_span_frames = SamplesToFrames(dst, FrameCount(audio));
  return pair;
}

double SampleDenoiseSnr(Rng& rng) {
  return rng.Uniform(kDenoiseSnrMinDb, kDenoiseSnrMaxDb);
}

AudioPair ConstructDenoisePair(const Waveform& clean,
                               const std::vector<Waveform>& noise_pool,
                               double snr_db, Rng& rng) {
  const Waveform& noise = PickNoise(noise_pool, rng);
  return {dsp::MixAtSnr(clean, noise, snr_db, rng), clean, {}};
}

AudioPair ConstructAddSoundPair(const Waveform& clean,
                                const std::vector<Waveform>& noise_pool,
                                double snr_db, Rng& rng) {
  const Waveform& noise = PickNoise(noise_pool, rng);
  return {clean, dsp::MixAtSnr(clean, noise, snr_db, rng), {}};
}

AudioPair ConstructSpeedPair(const Waveform& audio, double rate) {
  return {audio, dsp::TimeStretch(audio, rate), {}};
}

AudioPair ConstructPitchPair(const Waveform& audio, double steps) {
  return {audio, dsp::PitchShift(audio, steps), {}};
}

AudioPair ConstructVolumePair(const Waveform& audio, double factor) {
  if (!(factor > 0.0)) throw ValidationError("volume factor must be positive");
  return {audio, dsp::ApplyGain(audio, factor), {}};
}

std::string FormatNumber(double value) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), res.ptr);
}

std::string SpeedInstruction(double rate) {
  return "adjusts the speed to " + FormatNumber(rate);
}

std::string PitchInstruction(double steps) {
  return "shifts the pitch by " + FormatNumber(steps) + " steps";
}

std::string VolumeInstruction(double factor) {
  return "adjusts the volume to " + FormatNumber(factor);
}

std::string DenoiseInstruction() { return "denoise the audio"; }

std::string AddSoundInstruction() { return "add background sound to the audio"; }

std::vector<double> BuildLossWeights(int frame_count, FrameSpan span,
                                     double weight) {
  if (!(weight >= 1.0)) throw ValidationError("edit weight must be >= 1");
  if (frame_count < 0) throw ValidationError("negative frame count");
  std::vector<double> w(frame_count, 1.0);
  if (span.empty()) return w;
  if (span.begin < 0 || span.end > frame_count) {
    throw BoundsError("frame span [" + std::to_string(span.begin) + ", " +
                      std::to_string(span.end) + ") outside " +
                      std::to_string(frame_count) + " frames");
  }
  std::fill(w.begin() + span.begin, w.begin() + span.end, weight);
  return w;
}

}  // namespace uniedit::forge
