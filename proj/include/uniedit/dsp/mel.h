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

#ifndef UNIEDIT_DSP_MEL_H_
#define UNIEDIT_DSP_MEL_H_

#include <vector>

#include "uniedit/audio/wav.h"
#include "uniedit/common/matrix.h"

namespace uniedit::dsp {

// HTK mel scale: m = 2595 log10(1 + f / 700).
double HzToMel(double hz);
double MelToHz(double mel);

struct MelConfig {
  int sample_rate = audio::kPipelineSampleRate;
  int fft_size = 1024;
  int n_mels = 80;
  double fmin = 0.0;
  double fmax = 8000.0;
};

// n_mels x (fft_size/2 + 1) triangular filters whose corner frequencies are
// n_mels + 2 points equally spaced in mel over [fmin, fmax]. Unnormalized
// (peak weight <= 1). Throws ConfigError on bad bounds or when a filter
// would contain no FFT bin.
Matrix MelFilterbank(const MelConfig& config);

// Center frequency (Hz) of each filter.
std::vector<double> MelCenterFrequencies(const MelConfig& config);

struct MelScale {
  int fft_size;
  int hop_size;
  int n_mels;
};

// {512, 1024, 2048} with hop = fft/4 and {40, 80, 160} mel bands.
std::vector<MelScale> DefaultMelScales();

inline constexpr double kLogMelFloor = 1e-5;

// log(max(filterbank * |STFT|, floor)) as an n_mels x frames matrix, using a
// Hann-windowed centered STFT.
Matrix LogMelSpectrogram(const audio::Waveform& wave, const MelScale& scale,
                         double fmin = 0.0, double fmax = -1.0);

// Reconstruction loss: mean over scales of the mean absolute difference of
// log-mel spectrograms. The shorter input is zero-padded to the longer.
// fmax < 0 means sample_rate / 2.
double MultiscaleMelLoss(const audio::Waveform& x, const audio::Waveform& y,
                         const std::vector<MelScale>& scales,
                         double fmin = 0.0, double fmax = -1.0);

}  // namespace uniedit::dsp

#endif  // UNIEDIT_DSP_MEL_H_
