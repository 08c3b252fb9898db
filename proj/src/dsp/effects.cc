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

#include "uniedit/dsp/effects.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "uniedit/common/error.h"
#include "uniedit/dsp/stft.h"

namespace uniedit::dsp {
namespace {

double At(const std::vector<double>& x, long i) {
  return (i >= 0 && i < static_cast<long>(x.size())) ? x[i] : 0.0;
}

double Sinc(double x) {
  if (std::abs(x) < 1e-12) return 1.0;
  const double px = std::numbers::pi * x;
  return std::sin(px) / px;
}

}  // namespace

double PeakAbs(const audio::Waveform& wave) {
  double peak = 0.0;
  for (double s : wave.samples) peak = std::max(peak, std::abs(s));
  return peak;
}

double MeanPower(const std::vector<double>& samples) {
  if (samples.empty()) return 0.0;
  double acc = 0.0;
  for (double s : samples) acc += s * s;
  return acc / static_cast<double>(samples.size());
}

audio::Waveform ApplyGain(const audio::Waveform& wave, double factor) {
  if (!std::isfinite(factor)) throw ConfigError("gain factor must be finite");
  audio::Waveform out = wave;
  for (double& s : out.samples) s = std::clamp(s * factor, -1.0, 1.0);
  return out;
}

audio::Waveform TimeStretch(const audio::Waveform& wave, double rate,
                            const WsolaConfig& config) {
  if (!(rate >= 0.25 && rate <= 4.0)) {
    throw ConfigError("time_stretch rate " + std::to_string(rate) +
                      " outside [0.25, 4]");
  }
  if (config.frame_length < 4 || config.frame_length % 2 != 0 ||
      config.tolerance < 0) {
    throw ConfigError("WSOLA frame_length must be even and >= 4");
  }
  const auto& x = wave.samples;
  const long n_in = static_cast<long>(x.size());
  const long n_out = std::lround(static_cast<double>(n_in) / rate);
  audio::Waveform out;
  out.sample_rate = wave.sample_rate;
  out.samples.assign(n_out, 0.0);
  if (n_in == 0 || n_out == 0) return out;

  const int len = config.frame_length;
  const int half = len / 2;
  const int syn_hop = half;
  const double ana_hop = syn_hop * rate;
  const auto window = MakeWindow(WindowType::kHann, len);
  std::vector<double> weight(n_out, 0.0);

  const long frames = n_out / syn_hop + 2;
  long prev_start = 0;
  for (long k = 0; k < frames; ++k) {
    const long nominal = std::lround(k * ana_hop) - half;
    long start = nominal;
    if (k > 0) {
      // Pick the shift whose segment best continues the previous one.
      const long natural = prev_start + syn_hop;
      double best = 0.0;
      for (int step = 0; step <= 2 * config.tolerance; ++step) {
        // Visit 0, -1, +1, -2, +2, ... so ties keep the smallest shift.
        const int delta = (step % 2 == 0) ? -(step / 2) : (step + 1) / 2;
        const long cand = nominal + delta;
        double dot = 0.0, energy = 0.0;
        for (int j = 0; j < len; ++j) {
          const double c = At(x, cand + j);
          dot += c * At(x, natural + j);
          energy += c * c;
        }
        const double score = energy > 0.0 ? dot / std::sqrt(energy) : 0.0;
        if (step == 0 || score > best + 1e-12 * std::abs(best)) {
          best = score;
          start = cand;
        }
      }
    }
    const long out_start = k * syn_hop - half;
    for (int j = 0; j < len; ++j) {
      const long o = out_start + j;
      if (o < 0 || o >= n_out) continue;
      out.samples[o] += window[j] * At(x, start + j);
      weight[o] += window[j];
    }
    prev_start = start;
  }
  for (long i = 0; i < n_out; ++i) {
    if (weight[i] > 1e-8) out.samples[i] /= weight[i];
  }
  return out;
}

audio::Waveform Resample(const audio::Waveform& wave, double ratio) {
  if (!(ratio > 0.0) || !std::isfinite(ratio)) {
    throw ConfigError("resample ratio must be positive");
  }
  const auto& x = wave.samples;
  const long n_out = std::lround(static_cast<double>(x.size()) / ratio);
  audio::Waveform out;
  out.sample_rate = wave.sample_rate;
  out.samples.assign(n_out, 0.0);
  // Low-pass at the output Nyquist when decimating.
  const double cutoff = std::min(1.0, 1.0 / ratio);
  constexpr int kZeroCrossings = 16;
  const double half_width = kZeroCrossings / cutoff;
  for (long m = 0; m < n_out; ++m) {
    const double pos = m * ratio;
    const long lo = static_cast<long>(std::ceil(pos - half_width));
    const long hi = static_cast<long>(std::floor(pos + half_width));
    double acc = 0.0;
    for (long i = lo; i <= hi; ++i) {
      const double d = pos - static_cast<double>(i);
      const double blackman =
          0.42 + 0.5 * std::cos(std::numbers::pi * d / half_width) +
          0.08 * std::cos(2.0 * std::numbers::pi * d / half_width);
      acc += At(x, i) * cutoff * Sinc(cutoff * d) * blackman;
    }
    out.samples[m] = acc;
  }
  return out;
}

audio::Waveform PitchShift(const audio::Waveform& wave, double semitone_steps) {
  if (!(std::abs(semitone_steps) <= 24.0)) {
    throw ConfigError("pitch shift limited to +/-24 semitones");
  }
  const double ratio = std::pow(2.0, semitone_steps / 12.0);
  const audio::Waveform resampled =
      semitone_steps == 0.0 ? wave : Resample(wave, ratio);
  audio::Waveform out = TimeStretch(resampled, 1.0 / ratio);
  out.samples.resize(wave.size(), 0.0);
  return out;
}

std::vector<double> ScaledNoiseForSnr(const audio::Waveform& clean,
                                      const audio::Waveform& noise,
                                      double snr_db, Rng& rng) {
  if (noise.empty()) throw PreconditionError("mix_at_snr: empty noise");
  if (std::isnan(snr_db)) throw ConfigError("mix_at_snr: SNR is NaN");
  const double p_clean = MeanPower(clean.samples);
  if (p_clean <= 0.0) {
    throw PreconditionError("mix_at_snr: clean input is silent, SNR undefined");
  }
  const std::size_t n = clean.size();
  const std::size_t m = noise.size();
  std::vector<double> segment(n);
  const auto offset = static_cast<std::size_t>(
      m >= n ? rng.UniformInt(0, static_cast<int64_t>(m - n))
             : rng.UniformInt(0, static_cast<int64_t>(m - 1)));
  for (std::size_t i = 0; i < n; ++i) segment[i] = noise.samples[(offset + i) % m];
  const double p_noise = MeanPower(segment);
  if (p_noise <= 0.0) throw PreconditionError("mix_at_snr: noise is silent");
  const double snr = std::min(snr_db, kMaxMixSnrDb);
  const double gain = std::sqrt(p_clean / (p_noise * std::pow(10.0, snr / 10.0)));
  for (double& s : segment) s *= gain;
  return segment;
}

audio::Waveform MixAtSnr(const audio::Waveform& clean,
                         const audio::Waveform& noise, double snr_db,
                         Rng& rng) {
  const auto scaled = ScaledNoiseForSnr(clean, noise, snr_db, rng);
  audio::Waveform out = clean;
  for (std::size_t i = 0; i < out.size(); ++i) {
    out.samples[i] = std::clamp(out.samples[i] + scaled[i], -1.0, 1.0);
  }
  return out;
}

}  // namespace uniedit::dsp
