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

#ifndef UNIEDIT_DSP_FFT_H_
#define UNIEDIT_DSP_FFT_H_

#include <complex>
#include <span>

namespace uniedit::dsp {

// Real-input DFT of fixed size backed by FFTW. Each instance owns its plans
// and buffers; do not share one instance between threads. Plan creation is
// serialized internally so instances may be built concurrently.
class RealFft {
 public:
  explicit RealFft(int size);
  ~RealFft();
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  int size() const { return size_; }
  int num_bins() const { return size_ / 2 + 1; }

  // Unnormalized forward transform: X[k] = sum_n x[n] exp(-2 pi i k n / N).
  void Forward(std::span<const double> in, std::span<std::complex<double>> out);
  // Inverse of Forward, including the 1/N factor.
  void Inverse(std::span<const std::complex<double>> in, std::span<double> out);

 private:
  int size_;
  double* real_buf_;
  void* complex_buf_;
  void* forward_plan_;
  void* inverse_plan_;
};

}  // namespace uniedit::dsp

#endif  // UNIEDIT_DSP_FFT_H_
