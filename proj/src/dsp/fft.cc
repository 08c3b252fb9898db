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

#include "uniedit/dsp/fft.h"

#include <fftw3.h>

#include <algorithm>
#include <mutex>

#include "uniedit/common/error.h"

namespace uniedit::dsp {
namespace {

// The FFTW planner is not thread safe.
std::mutex& PlannerMutex() {
  static std::mutex mu;
  return mu;
}

}  // namespace

RealFft::RealFft(int size) : size_(size) {
  if (size < 1) throw ConfigError("FFT size must be positive");
  std::lock_guard<std::mutex> lock(PlannerMutex());
  real_buf_ = fftw_alloc_real(size);
  auto* cbuf = fftw_alloc_complex(size / 2 + 1);
  complex_buf_ = cbuf;
  forward_plan_ = fftw_plan_dft_r2c_1d(size, real_buf_, cbuf, FFTW_ESTIMATE);
  inverse_plan_ = fftw_plan_dft_c2r_1d(size, cbuf, real_buf_, FFTW_ESTIMATE);
}

RealFft::~RealFft() {
  std::lock_guard<std::mutex> lock(PlannerMutex());
  fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  fftw_destroy_plan(static_cast<fftw_plan>(inverse_plan_));
  fftw_free(real_buf_);
  fftw_free(complex_buf_);
}

void RealFft::Forward(std::span<const double> in,
                      std::span<std::complex<double>> out) {
  if (static_cast<int>(in.size()) != size_ ||
      static_cast<int>(out.size()) != num_bins()) {
    throw ShapeError("RealFft::Forward: buffer size mismatch");
  }
  std::copy(in.begin(), in.end(), real_buf_);
  fftw_execute(static_cast<fftw_plan>(forward_plan_));
  const auto* c = static_cast<const fftw_complex*>(complex_buf_);
  for (int k = 0; k < num_bins(); ++k) out[k] = {c[k][0], c[k][1]};
}

void RealFft::Inverse(std::span<const std::complex<double>> in,
                      std::span<double> out) {
  if (static_cast<int>(in.size()) != num_bins() ||
      static_cast<int>(out.size()) != size_) {
    throw ShapeError("RealFft::Inverse: buffer size mismatch");
  }
  auto* c = static_cast<fftw_complex*>(complex_buf_);
  for (int k = 0; k < num_bins(); ++k) {
    c[k][0] = in[k].real();
    c[k][1] = in[k].imag();
  }
  // c2r ignores the imaginary parts of DC and Nyquist, as a real signal would.
  fftw_execute(static_cast<fftw_plan>(inverse_plan_));
  const double scale = 1.0 / size_;
  for (int n = 0; n < size_; ++n) out[n] = real_buf_[n] * scale;
}

}  // namespace uniedit::dsp
