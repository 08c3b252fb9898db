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

#ifndef UNIEDIT_DSP_EFFECTS_H_
#define UNIEDIT_DSP_EFFECTS_H_

#include <vector>

#include "uniedit/audio/wav.h"
#include "uniedit/common/rng.h"

namespace uniedit::dsp {

double PeakAbs(const audio::Waveform& wave);
// Mean squared amplitude; 0 for an empty waveform.
double MeanPower(const std::vector<double>& samples);

// Multiply by `factor` then clamp to [-1, 1].
audio::Waveform ApplyGain(const audio::Waveform& wave, double factor);

struct WsolaConfig {
  int frame_length = 640;  // 40 ms at 16 kHz; synthesis hop is half of it
  int tolerance = 160;     // max search shift, samples either side
};

// Waveform-similarity overlap-add time-scale modification. Output length is
// round(N / rate); pitch is preserved. rate must lie in [0.25, 4].
audio::Waveform TimeStretch(const audio::Waveform& wave, double rate,
                            const WsolaConfig& config = {});

// Band-limited resampling that reads the input every `ratio` samples, so the
// output has round(N / ratio) samples and every frequency is scaled by
// `ratio` when played at the original rate. Windowed-sinc kernel.
audio::Waveform Resample(const audio::Waveform& wave, double ratio);

// Pitch scaled by 2^(steps/12) with duration kept: resample, then stretch
// back and fit to the input length. |steps| <= 24.
audio::Waveform PitchShift(const audio::Waveform& wave, double semitone_steps);

inline constexpr double kMaxMixSnrDb = 60.0;

// Noise segment cropped (or looped) to the clean length starting at a random
// offset from `rng`, scaled so that 10 log10(P_clean / P_noise) = snr_db
// (capped at kMaxMixSnrDb). Throws PreconditionError for silent clean or
// silent/empty noise.
std::vector<double> ScaledNoiseForSnr(const audio::Waveform& clean,
                                      const audio::Waveform& noise,
                                      double snr_db, Rng& rng);

// clean + ScaledNoiseForSnr(...), clamped to [-1, 1].
audio::Waveform MixAtSnr(const audio::Waveform& clean,
                         const audio::Waveform& noise, double snr_db, Rng& rng);

}  // namespace uniedit::dsp

#endif  // UNIEDIT_DSP_EFFECTS_H_
