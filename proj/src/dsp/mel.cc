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

#include "uniedit/dsp/mel.h"

#include <algorithm>
#include <cmath>

#include "uniedit/common/error.h"
#include "uniedit/dsp/stft.h"

namespace uniedit::dsp {

double HzToMel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }

double MelToHz(double mel) {
  return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}

namespace {

void ValidateMelConfig(const MelConfig& c) {
  if (c.sample_rate <= 0 || c.fft_size < 2) {
    throw ConfigError("mel: sample_rate and fft_size must be positive");
  }
  if (c.n_mels < 1) throw ConfigError("mel: n_mels must be >= 1");
  if (!(c.fmin >= 0.0 && c.fmin < c.fmax && c.fmax <= c.sample_rate / 2.0)) {
    throw ConfigError("mel: need 0 <= fmin < fmax <= sample_rate/2");
  }
}

std::vector<double> CornerFrequencies(const MelConfig& c) {
  const double lo = HzToMel(c.fmin);
  const double hi = HzToMel(c.fmax);
  std::vector<double> hz(c.n_mels + 2);
  for (int i = 0; i < c.n_mels + 2; ++i) {
    hz[i] = MelToHz(lo + (hi - lo) * i / (c.n_mels + 1));
  }
  hz.front() = c.fmin;
  hz.back() = c.fmax;
  return hz;
}

}  // namespace

std::vector<double> MelCenterFrequencies(const MelConfig& config) {
  ValidateMelConfig(config);
  auto hz = CornerFrequencies(config);
  return std::vector<double>(hz.begin() + 1, hz.end() - 1);
}

Matrix MelFilterbank(const MelConfig& config) {
  ValidateMelConfig(config);
  const auto corners = CornerFrequencies(config);
  const int bins = config.fft_size / 2 + 1;
  Matrix fb = Matrix::Zero(config.n_mels, bins);
  for (int m = 0; m < config.n_mels; ++m) {
    const double left = corners[m], center = corners[m + 1],
                 right = corners[m + 2];
    bool any = false;
    for (int k = 0; k < bins; ++k) {
      const double f =
          static_cast<double>(k) * config.sample_rate / config.fft_size;
      const double rise = (f - left) / (center - left);
      const double fall = (right - f) / (right - center);
      const double w = std::max(0.0, std::min(rise, fall));
      fb(m, k) = w;
      any = any || w > 0.0;
    }
    if (!any) {
      throw ConfigError("mel filter " + std::to_string(m) +
                        " covers no FFT bin; reduce n_mels or raise fft_size");
    }
  }
  return fb;
}

std::vector<MelScale> DefaultMelScales() {
  return {{512, 128, 40}, {1024, 256, 80}, {2048, 512, 160}};
}

Matrix LogMelSpectrogram(const audio::Waveform& wave, const MelScale& scale,
                         double fmin, double fmax) {
  MelConfig mc;
  mc.sample_rate = wave.sample_rate;
  mc.fft_size = scale.fft_size;
  mc.n_mels = scale.n_mels;
  mc.fmin = fmin;
  mc.fmax = fmax < 0.0 ? wave.sample_rate / 2.0 : fmax;
  const Matrix fb = MelFilterbank(mc);
  const auto spec = Stft(
      wave, StftConfig{scale.fft_size, scale.hop_size, WindowType::kHann});
  Matrix mel = fb * spec.magnitude;
  return mel.unaryExpr([](double v) { return std::log(std::max(v, kLogMelFloor)); });
}

double MultiscaleMelLoss(const audio::Waveform& x, const audio::Waveform& y,
                         const std::vector<MelScale>& scales, double fmin,
                         double fmax) {
  if (scales.empty()) throw ConfigError("mel loss needs at least one scale");
  if (x.sample_rate != y.sample_rate) {
    throw PreconditionError("mel loss inputs differ in sample rate");
  }
  audio::Waveform a = x, b = y;
  const std::size_t len = std::max(a.size(), b.size());
  a.samples.resize(len, 0.0);
  b.samples.resize(len, 0.0);
  double total = 0.0;
  for (const auto& scale : scales) {
    const Matrix la = LogMelSpectrogram(a, scale, fmin, fmax);
    const Matrix lb = LogMelSpectrogram(b, scale, fmin, fmax);
    total += (la - lb).cwiseAbs().mean();
  }
  return total / static_cast<double>(scales.size());
}

}  // namespace uniedit::dsp
