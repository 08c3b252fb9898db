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

#ifndef UNIEDIT_FLOW_VELOCITY_NET_H_
#define UNIEDIT_FLOW_VELOCITY_NET_H_

#include <vector>

#include "uniedit/common/matrix.h"
#include "uniedit/common/rng.h"

namespace uniedit::flow {

struct DenseLayer {
  Matrix weight;  // out x in
  Vector bias;    // out
};

// A batch of flow-matching draws, one row per draw.
struct FlowBatch {
  Matrix x0;    // B x d
  Matrix x1;    // B x d
  Vector t;     // B
  Matrix cond;  // B x c (zeros for dropped conditioning)
};

// MLP (x_t, t, cond) -> velocity with tanh hidden layers and a linear
// output. Input width is d + 1 + c.
class VelocityNet {
 public:
  // Zero-initialized network.
  VelocityNet(int data_dim, int cond_dim, const std::vector<int>& hidden = {64, 64, 64});
  // Takes explicit layers; throws ShapeError naming the first bad layer.
  VelocityNet(int data_dim, int cond_dim, std::vector<DenseLayer> layers);

  // Weights ~ N(0, 1/fan_in), biases zero.
  static VelocityNet Random(int data_dim, int cond_dim,
                            const std::vector<int>& hidden, Rng& rng);

  int data_dim() const { return data_dim_; }
  int cond_dim() const { return cond_dim_; }
  const std::vector<DenseLayer>& layers() const { return layers_; }

  Vector Forward(const Vector& x_t, double t, const Vector& cond) const;
  Matrix ForwardBatch(const Matrix& x_t, const Vector& t,
                      const Matrix& cond) const;

  // Mean over batch and dimensions of (v(x_t, t, c) - (x1 - x0))^2.
  double Loss(const FlowBatch& batch) const;

  // Exact gradient of Loss with respect to every parameter, laid out as in
  // Parameters(). Returns the loss value too.
  double Backward(const FlowBatch& batch, std::vector<double>& grad) const;

  // Flattened view: for each layer, weight (row-major) then bias.
  std::size_t NumParameters() const;
  std::vector<double> Parameters() const;
  void SetParameters(const std::vector<double>& params);

 private:
  void CheckShapes() const;
  Matrix InputMatrix(const Matrix& x_t, const Vector& t,
                     const Matrix& cond) const;

  int data_dim_;
  int cond_dim_;
  std::vector<DenseLayer> layers_;
};

// Adam over a flat parameter vector.
class AdamOptimizer {
 public:
  explicit AdamOptimizer(std::size_t size, double learning_rate = 1e-3,
                         double beta1 = 0.9, double beta2 = 0.999,
                         double epsilon = 1e-8);
  void Step(std::vector<double>& params, const std::vector<double>& grad);

 private:
  double lr_, beta1_, beta2_, eps_;
  long step_ = 0;
  std::vector<double> m_, v_;
};

}  // namespace uniedit::flow

#endif  // UNIEDIT_FLOW_VELOCITY_NET_H_
