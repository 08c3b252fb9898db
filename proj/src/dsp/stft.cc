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

#include "uniedit/dsp/stft.h"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "uniedit/common/error.h"
#include "uniedit/dsp/fft.h"

namespace uniedit::dsp {
namespace {

// Index into a reflect-padded signal (numpy "reflect": edge not repeated).
long ReflectIndex(long i, long n) {
  if (n == 1) return 0;
  const long period = 2 * (n - 1);
  i %= period;
  if (i < 0) i += period;
  return i < n ? i : period - i;
}

}  // namespace

std::string WindowName(WindowType type) {
  switch (type) {
    case WindowType::kHann:
      return "hann";
    case WindowType::kSqrtHann:
      return "sqrt_hann";
    case WindowType::kRectangular:
      return "rect";
  }
  return "unknown";
}

WindowType ParseWindow(const std::string& name) {
  if (name == "hann") return WindowType::kHann;
  if (name == "sqrt_hann") return WindowType::kSqrtHann;
  if (name == "rect") return WindowType::kRectangular;
  throw ConfigError("unknown window '" + name + "'");
}

std::vector<double> MakeWindow(WindowType type, int size) {
  std::vector<double> w(size, 1.0);
  if (type == WindowType::kRectangular) return w;
  for (int n = 0; n < size; ++n) {
    const double hann =
        0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * n / size);
    w[n] = type == WindowType::kHann ? hann : std::sqrt(hann);
  }
  return w;
}

std::vector<StftConfig> ShippedColaConfigs() {
  return {
      {512, 128, WindowType::kHann},
      {1024, 256, WindowType::kHann},
      {2048, 512, WindowType::kHann},
      {640, 320, WindowType::kSqrtHann},
      {320, 320, WindowType::kRectangular},
  };
}

void ValidateStftConfig(const StftConfig& config) {
  if (config.fft_size < 2 || config.hop_size < 1) {
    throw ConfigError("STFT sizes must be positive (fft >= 2)");
  }
  if (config.hop_size > config.fft_size) {
    throw ConfigError("STFT hop_size " + std::to_string(config.hop_size) +
                      " exceeds fft_size " + std::to_string(config.fft_size));
  }
}

bool IsCola(const StftConfig& config) {
  ValidateStftConfig(config);
  const auto w = MakeWindow(config.window, config.fft_size);
  const int hop = config.hop_size;
  // Sum of squared shifted windows over one hop period, steady state.
  std::vector<double> acc(hop, 0.0);
  for (int n = 0; n < config.fft_size; ++n) acc[n % hop] += w[n] * w[n];
  double lo = acc[0], hi = acc[0];
  for (double v : acc) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return hi > 0.0 && (hi - lo) <= 1e-9 * hi;
}

ComplexSpectrogram Stft(const audio::Waveform& wave, const StftConfig& config,
                        bool round_trip) {
  ValidateStftConfig(config);
  if (round_trip && !IsCola(config)) {
    throw ConfigError("STFT config fft=" + std::to_string(config.fft_size) +
                      " hop=" + std::to_string(config.hop_size) + " window=" +
                      WindowName(config.window) +
                      " does not satisfy the overlap-add condition");
  }
  const int n_fft = config.fft_size;
  const int hop = config.hop_size;
  const long n = static_cast<long>(wave.size());
  const long pad = n_fft / 2;
  const int frames = static_cast<int>(1 + n / hop);
  const auto window = MakeWindow(config.window, n_fft);

  ComplexSpectrogram spec;
  spec.config = config;
  spec.sample_rate = wave.sample_rate;
  spec.num_samples = n;
  spec.magnitude.setZero(n_fft / 2 + 1, frames);
  spec.phase.setZero(n_fft / 2 + 1, frames);
  if (n == 0) return spec;

  RealFft fft(n_fft);
  std::vector<double> frame(n_fft);
  std::vector<std::complex<double>> bins(fft.num_bins());
  for (int m = 0; m < frames; ++m) {
    const long start = static_cast<long>(m) * hop - pad;
    for (int j = 0; j < n_fft; ++j) {
      frame[j] = window[j] * wave.samples[ReflectIndex(start + j, n)];
    }
    fft.Forward(frame, bins);
    for (int k = 0; k < fft.num_bins(); ++k) {
      spec.magnitude(k, m) = std::abs(bins[k]);
      spec.phase(k, m) = std::arg(bins[k]);
    }
  }
  return spec;
}

audio::Waveform IstftSynthesize(const ComplexSpectrogram& spec) {
  const StftConfig& config = spec.config;
  ValidateStftConfig(config);
  const int n_fft = config.fft_size;
  const int hop = config.hop_size;
  if (spec.num_bins() != n_fft / 2 + 1 ||
      spec.phase.rows() != spec.magnitude.rows() ||
      spec.phase.cols() != spec.magnitude.cols()) {
    throw ShapeError("spectrogram shape does not match its config");
  }
  const long pad = n_fft / 2;
  const int frames = spec.num_frames();
  const long padded_len = static_cast<long>(frames - 1) * hop + n_fft;
  const auto window = MakeWindow(config.window, n_fft);

  std::vector<double> acc(padded_len, 0.0);
  std::vector<double> norm(padded_len, 0.0);
  RealFft fft(n_fft);
  std::vector<std::complex<double>> bins(fft.num_bins());
  std::vector<double> frame(n_fft);
  for (int m = 0; m < frames; ++m) {
    for (int k = 0; k < fft.num_bins(); ++k) {
      bins[k] = std::polar(spec.magnitude(k, m), spec.phase(k, m));
    }
    fft.Inverse(bins, frame);
    const long start = static_cast<long>(m) * hop;
    for (int j = 0; j < n_fft; ++j) {
      acc[start + j] += window[j] * frame[j];
      norm[start + j] += window[j] * window[j];
    }
  }

  audio::Waveform out;
  out.sample_rate = spec.sample_rate;
  out.samples.resize(spec.num_samples);
  for (long i = 0; i < spec.num_samples; ++i) {
    const long p = i + pad;
    if (p >= padded_len || norm[p] < 1e-11) {
      throw NumericError("iSTFT normalizer vanishes at sample " +
                         std::to_string(i) + " (degenerate window/hop)");
    }
    out.samples[i] = acc[p] / norm[p];
  }
  return out;
}

double SnrDb(const std::vector<double>& reference,
             const std::vector<double>& estimate, std::size_t begin,
             std::size_t end) {
  if (estimate.size() < end || reference.size() < end || begin > end) {
    throw ShapeError("SnrDb: range exceeds signal length");
  }
  double signal = 0.0, error = 0.0;
  for (std::size_t i = begin; i < end; ++i) {
    signal += reference[i] * reference[i];
    const double d = reference[i] - estimate[i];
    error += d * d;
  }
  if (error == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(signal / error);
}

}  // namespace uniedit::dsp
