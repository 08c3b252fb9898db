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

#include "uniedit/flow/velocity_net.h"

#include <cmath>

#include "uniedit/common/error.h"

namespace uniedit::flow {

VelocityNet::VelocityNet(int data_dim, int cond_dim,
                         const std::vector<int>& hidden)
    : data_dim_(data_dim), cond_dim_(cond_dim) {
  int in = data_dim + 1 + cond_dim;
  std::vector<int> sizes = hidden;
  sizes.push_back(data_dim);
  for (int out : sizes) {
    if (out < 1) throw ConfigError("layer widths must be positive");
    layers_.push_back({Matrix::Zero(out, in), Vector::Zero(out)});
    in = out;
  }
  CheckShapes();
}

VelocityNet::VelocityNet(int data_dim, int cond_dim,
                         std::vector<DenseLayer> layers)
    : data_dim_(data_dim), cond_dim_(cond_dim), layers_(std::move(layers)) {
  CheckShapes();
}

VelocityNet VelocityNet::Random(int data_dim, int cond_dim,
                                const std::vector<int>& hidden, Rng& rng) {
  VelocityNet net(data_dim, cond_dim, hidden);
  for (auto& layer : net.layers_) {
    const double scale = 1.0 / std::sqrt(static_cast<double>(layer.weight.cols()));
    for (Eigen::Index i = 0; i < layer.weight.size(); ++i) {
      layer.weight.data()[i] = scale * rng.Normal();
    }
  }
  return net;
}

void VelocityNet::CheckShapes() const {
  if (data_dim_ < 1 || cond_dim_ < 0) {
    throw ShapeError("velocity net: data_dim must be >= 1, cond_dim >= 0");
  }
  if (layers_.empty()) throw ShapeError("velocity net has no layers");
  Eigen::Index in = data_dim_ + 1 + cond_dim_;
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const auto& layer = layers_[l];
    if (layer.weight.cols() != in || layer.bias.size() != layer.weight.rows()) {
      throw ShapeError("velocity net layer " + std::to_string(l) +
                       ": weight is " + std::to_string(layer.weight.rows()) +
                       "x" + std::to_string(layer.weight.cols()) +
                       ", bias " + std::to_string(layer.bias.size()) +
                       ", expected input width " + std::to_string(in));
    }
    in = layer.weight.rows();
  }
  if (in != data_dim_) {
    throw ShapeError("velocity net layer " + std::to_string(layers_.size() - 1) +
                     ": output width " + std::to_string(in) +
                     " != data_dim " + std::to_string(data_dim_));
  }
}

Matrix VelocityNet::InputMatrix(const Matrix& x_t, const Vector& t,
                                const Matrix& cond) const {
  const Eigen::Index b = x_t.rows();
  if (x_t.cols() != data_dim_ || t.size() != b || cond.rows() != b ||
      cond.cols() != cond_dim_) {
    throw ShapeError("velocity net layer 0: input batch shapes inconsistent");
  }
  Matrix in(b, data_dim_ + 1 + cond_dim_);
  in.leftCols(data_dim_) = x_t;
  in.col(data_dim_) = t;
  in.rightCols(cond_dim_) = cond;
  return in;
}

Matrix VelocityNet::ForwardBatch(const Matrix& x_t, const Vector& t,
                                 const Matrix& cond) const {
  Matrix h = InputMatrix(x_t, t, cond);
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    Matrix a = h * layers_[l].weight.transpose();
    a.rowwise() += layers_[l].bias.transpose();
    h = (l + 1 < layers_.size()) ? Matrix(a.array().tanh()) : a;
  }
  return h;
}

Vector VelocityNet::Forward(const Vector& x_t, double t,
                            const Vector& cond) const {
  Vector tv(1);
  tv(0) = t;
  const Matrix out = ForwardBatch(x_t.transpose(), tv, cond.transpose());
  return out.row(0).transpose();
}

double VelocityNet::Loss(const FlowBatch& batch) const {
  const Matrix x_t = (1.0 - batch.t.array()).matrix().asDiagonal() * batch.x0 +
                     batch.t.asDiagonal() * batch.x1;
  const Matrix v = ForwardBatch(x_t, batch.t, batch.cond);
  return (v - (batch.x1 - batch.x0)).array().square().mean();
}

double VelocityNet::Backward(const FlowBatch& batch,
                             std::vector<double>& grad) const {
  const Matrix x_t = (1.0 - batch.t.array()).matrix().asDiagonal() * batch.x0 +
                     batch.t.asDiagonal() * batch.x1;
  // Forward pass keeping every layer's activation.
  std::vector<Matrix> acts;
  acts.push_back(InputMatrix(x_t, batch.t, batch.cond));
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    Matrix a = acts.back() * layers_[l].weight.transpose();
    a.rowwise() += layers_[l].bias.transpose();
    acts.push_back((l + 1 < layers_.size()) ? Matrix(a.array().tanh()) : a);
  }
  const Matrix residual = acts.back() - (batch.x1 - batch.x0);
  const double loss = residual.array().square().mean();

  grad.assign(NumParameters(), 0.0);
  Matrix delta = residual * (2.0 / static_cast<double>(residual.size()));
  std::size_t offset = NumParameters();
  for (std::size_t l = layers_.size(); l-- > 0;) {
    const auto& layer = layers_[l];
    if (l + 1 < layers_.size()) {
      // Through tanh: d tanh(a) = 1 - tanh(a)^2.
      delta = delta.cwiseProduct(
          Matrix((1.0 - acts[l + 1].array().square())));
    }
    const Matrix grad_w = delta.transpose() * acts[l];
    const Vector grad_b = delta.colwise().sum().transpose();
    offset -= layer.weight.size() + layer.bias.size();
    std::copy(grad_w.data(), grad_w.data() + grad_w.size(),
              grad.begin() + static_cast<long>(offset));
    std::copy(grad_b.data(), grad_b.data() + grad_b.size(),
              grad.begin() + static_cast<long>(offset + grad_w.size()));
    if (l > 0) delta = delta * layer.weight;
  }
  return loss;
}

std::size_t VelocityNet::NumParameters() const {
  std::size_t n = 0;
  for (const auto& layer : layers_) n += layer.weight.size() + layer.bias.size();
  return n;
}

std::vector<double> VelocityNet::Parameters() const {
  std::vector<double> params;
  params.reserve(NumParameters());
  for (const auto& layer : layers_) {
    params.insert(params.end(), layer.weight.data(),
                  layer.weight.data() + layer.weight.size());
    params.insert(params.end(), layer.bias.data(),
                  layer.bias.data() + layer.bias.size());
  }
  return params;
}

void VelocityNet::SetParameters(const std::vector<double>& params) {
  if (params.size() != NumParameters()) {
    throw ShapeError("parameter vector has " + std::to_string(params.size()) +
                     " entries, net has " + std::to_string(NumParameters()));
  }
  std::size_t offset = 0;
  for (auto& layer : layers_) {
    std::copy_n(params.begin() + static_cast<long>(offset), layer.weight.size(),
                layer.weight.data());
    offset += layer.weight.size();
    std::copy_n(params.begin() + static_cast<long>(offset), layer.bias.size(),
                layer.bias.data());
    offset += layer.bias.size();
  }
}

AdamOptimizer::AdamOptimizer(std::size_t size, double learning_rate,
                             double beta1, double beta2, double epsilon)
    : lr_(learning_rate),
      beta1_(beta1),
      beta2_(beta2),
      eps_(epsilon),
      m_(size, 0.0),
      v_(size, 0.0) {}

void AdamOptimizer::Step(std::vector<double>& params,
                         const std::vector<double>& grad) {
  if (params.size() != m_.size() || grad.size() != m_.size()) {
    throw ShapeError("Adam: parameter/gradient size mismatch");
  }
  ++step_;
  const double c1 = 1.0 - std::pow(beta1_, static_cast<double>(step_));
  const double c2 = 1.0 - std::pow(beta2_, static_cast<double>(step_));
  for (std::size_t i = 0; i < params.size(); ++i) {
    m_[i] = beta1_ * m_[i] + (1.0 - beta1_) * grad[i];
    v_[i] = beta2_ * v_[i] + (1.0 - beta2_) * grad[i] * grad[i];
    params[i] -= lr_ * (m_[i] / c1) / (std::sqrt(v_[i] / c2) + eps_);
  }
}

}  // namespace uniedit::flow
