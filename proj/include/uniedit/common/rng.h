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

#ifndef UNIEDIT_COMMON_RNG_H_
#define UNIEDIT_COMMON_RNG_H_

#include <cstdint>
#include <random>
#include <string_view>

namespace uniedit {

// Seeded generator with distribution code written out here rather than taken
// from <random>, whose distributions are implementation-defined. Outputs are
// therefore identical across standard libraries for a given seed.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t NextU64() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double Uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }

  // Uniform integer in [lo, hi] (inclusive), rejection-sampled.
  int64_t UniformInt(int64_t lo, int64_t hi);

  // Standard normal via Box-Muller; the second variate is cached.
  double Normal();

  bool Bernoulli(double p) { return Uniform() < p; }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// splitmix64 finalizer.
uint64_t MixSeed(uint64_t x);

// Seed for an independent per-item stream, a pure function of (seed, key).
// Used so that item-level parallelism never changes results.
uint64_t DeriveSeed(uint64_t seed, std::string_view key);

}  // namespace uniedit

#endif  // UNIEDIT_COMMON_RNG_H_
