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

#ifndef UNIEDIT_AUDIO_WAV_H_
#define UNIEDIT_AUDIO_WAV_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace uniedit::audio {

inline constexpr int kPipelineSampleRate = 16000;

// Mono audio. Samples are nominally in [-1, 1].
struct Waveform {
  std::vector<double> samples;
  int sample_rate = kPipelineSampleRate;

  std::size_t size() const { return samples.size(); }
  bool empty() const { return samples.empty(); }
  double duration_seconds() const {
    return static_cast<double>(samples.size()) / sample_rate;
  }
};

// Throws ValidationError if a sample is non-finite or the rate is not
// positive. When `require_unit_range` is set, |sample| <= 1 is enforced too.
void ValidateWaveform(const Waveform& wave, bool require_unit_range = false);

// Decodes a RIFF/WAVE PCM16 mono file; samples are int16 / 32768.
// `required_rate` rejects any other sample rate (pass nullopt to accept all).
Waveform ReadWav(const std::string& path,
                 std::optional<int> required_rate = kPipelineSampleRate);

// Parses an in-memory WAV image. `origin` is used in error messages.
Waveform DecodeWav(const std::vector<unsigned char>& bytes,
                   const std::string& origin = "<memory>",
                   std::optional<int> required_rate = kPipelineSampleRate);

// Encodes as PCM16 mono: clamp to [-1, 1], scale by 32768, round to nearest,
// saturate to the int16 range. This is the exact inverse of ReadWav's
// scaling on every int16 value.
std::vector<unsigned char> EncodeWav(const Waveform& wave);
void WriteWav(const Waveform& wave, const std::string& path);

// Quantizes a single sample exactly as EncodeWav does.
short QuantizeSample(double sample);

}  // namespace uniedit::audio

#endif  // UNIEDIT_AUDIO_WAV_H_
