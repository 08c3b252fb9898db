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

#ifndef UNIEDIT_TESTS_SUPPORT_ORACLES_H_
#define UNIEDIT_TESTS_SUPPORT_ORACLES_H_

// Deliberately naive reference implementations used as test oracles.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "uniedit/common/rng.h"
#include "uniedit/flow/velocity_net.h"
#include "uniedit/stop/stop_detector.h"

namespace uniedit::testing {

// Levenshtein distance by full-table recursion order.
inline int LevenshteinOracle(const std::vector<std::string>& a,
                             const std::vector<std::string>& b) {
  std::vector<std::vector<int>> d(a.size() + 1, std::vector<int>(b.size() + 1));
  for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = static_cast<int>(i);
  for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = static_cast<int>(j);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1,
                          d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
    }
  }
  return d[a.size()][b.size()];
}

inline std::vector<std::string> RandomTokens(Rng& rng, int max_len,
                                             int alphabet) {
  std::vector<std::string> out(rng.UniformInt(0, max_len));
  for (auto& t : out) t = std::string(1, static_cast<char>('a' + rng.UniformInt(0, alphabet - 1)));
  return out;
}

// Label rule spelled out position by position.
inline std::vector<stop::StopLabel> StopLabelsOracle(
    const std::vector<double>& scores) {
  using stop::StopLabel;
  const int t = static_cast<int>(scores.size());
  std::vector<StopLabel> labels(t, StopLabel::kUnused);
  for (int i = 0; i < t; ++i) {
    if (i == t - 1) {
      labels[i] = StopLabel::kPositive;
    } else if (i >= t - 4) {
      labels[i] = StopLabel::kIgnore;
    }
  }
  int best = -1;
  for (int i = 0; i <= t - 5; ++i) {
    if (best < 0 || scores[i] > scores[best]) best = i;
  }
  if (best >= 0) labels[best] = StopLabel::kNegative;
  return labels;
}

inline flow::FlowBatch RandomFlowBatch(int batch, int d, int c, Rng& rng) {
  flow::FlowBatch b;
  b.x0.resize(batch, d);
  b.x1.resize(batch, d);
  b.t.resize(batch);
  b.cond.resize(batch, c);
  for (int i = 0; i < batch; ++i) {
    for (int j = 0; j < d; ++j) {
      b.x0(i, j) = rng.Normal();
      b.x1(i, j) = rng.Normal() * 2.0;
    }
    for (int j = 0; j < c; ++j) b.cond(i, j) = rng.Normal();
    b.t(i) = rng.Uniform();
  }
  return b;
}

// Largest per-parameter relative error between analytic and central
// finite-difference gradients. Magnitudes below `floor` are compared on an
// absolute scale so that vanishing gradients do not amplify rounding noise.
inline double MaxGradientRelativeError(const flow::VelocityNet& net,
                                       const flow::FlowBatch& batch,
                                       double h = 1e-5, double floor = 1e-6) {
  std::vector<double> grad;
  net.Backward(batch, grad);
  const std::vector<double> base = net.Parameters();
  flow::VelocityNet probe = net;
  double worst = 0.0;
  for (std::size_t k = 0; k < base.size(); ++k) {
    std::vector<double> p = base;
    p[k] = base[k] + h;
    probe.SetParameters(p);
    const double up = probe.Loss(batch);
    p[k] = base[k] - h;
    probe.SetParameters(p);
    const double down = probe.Loss(batch);
    const double fd = (up - down) / (2.0 * h);
    const double denom = std::max({std::abs(fd), std::abs(grad[k]), floor});
    worst = std::max(worst, std::abs(fd - grad[k]) / denom);
  }
  return worst;
}

}  // namespace uniedit::testing

#endif  // UNIEDIT_TESTS_SUPPORT_ORACLES_H_
