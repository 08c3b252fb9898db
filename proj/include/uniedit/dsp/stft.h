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

#ifndef UNIEDIT_DSP_STFT_H_
#define UNIEDIT_DSP_STFT_H_

#include <string>
#include <vector>

#include "uniedit/audio/wav.h"
#include "uniedit/common/matrix.h"

namespace uniedit::dsp {

enum class WindowType { kHann, kSqrtHann, kRectangular };

std::string WindowName(WindowType type);
WindowType ParseWindow(const std::string& name);

// Periodic (DFT-even) windows of length `size`.
std::vector<double> MakeWindow(WindowType type, int size);

struct StftConfig {
  int fft_size = 1024;
  int hop_size = 256;
  WindowType window = WindowType::kHann;
};

// Configs known to reconstruct exactly under weighted overlap-add.
std::vector<StftConfig> ShippedColaConfigs();

// True when sum_k w(n - k*hop)^2 is constant in n (to 1e-9 relative), i.e.
// analysis and synthesis with the same window need no per-sample gain.
bool IsCola(const StftConfig& config);

// Throws ConfigError on hop > fft, non-positive sizes, and so on.
void ValidateStftConfig(const StftConfig& config);

struct ComplexSpectrogram {
  Matrix magnitude;  // F x N, F = fft_size / 2 + 1
  Matrix phase;      // F x N, radians
  StftConfig config;
  int sample_rate = audio::kPipelineSampleRate;
  long num_samples = 0;  // length of the analysed signal

  int num_bins() const { return static_cast<int>(magnitude.rows()); }
  int num_frames() const { return static_cast<int>(magnitude.cols()); }
};

// Centered STFT: the signal is reflect-padded by fft_size/2 on both sides
// and framed every hop_size samples, giving 1 + N / hop columns. With
// `round_trip` set, a non-COLA config raises ConfigError.
ComplexSpectrogram Stft(const audio::Waveform& wave, const StftConfig& config,
                        bool round_trip = false);

// Weighted overlap-add inverse of Stft, normalized by the summed squared
// window. Output has spec.num_samples samples. A zero normalizer inside the
// output raises NumericError (degenerate window/hop).
audio::Waveform IstftSynthesize(const ComplexSpectrogram& spec);

// 10 log10(sum ref^2 / sum (ref - est)^2) over [begin, end). Returns +inf on
// exact equality.
double SnrDb(const std::vector<double>& reference,
             const std::vector<double>& estimate, std::size_t begin,
             std::size_t end);

}  // namespace uniedit::dsp

#endif  // UNIEDIT_DSP_STFT_H_
