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

#include "uniedit/flow/toy_training.h"

#include <cmath>
#include <limits>
#include <numbers>

#include "uniedit/common/error.h"

namespace uniedit::flow {

Vector ToyClassCenter(const ToyFlowConfig& config, int cls) {
  const double angle = 2.0 * std::numbers::pi * cls / config.num_classes;
  Vector c(2);
  c << config.radius * std::cos(angle), config.radius * std::sin(angle);
  return c;
}

FlowBatch DrawToyBatch(const ToyFlowConfig& config, int size, Rng& rng,
                       bool allow_dropout) {
  FlowBatch batch;
  batch.x0.resize(size, 2);
  batch.x1.resize(size, 2);
  batch.t.resize(size);
  batch.cond = Matrix::Zero(size, config.num_classes);
  for (int i = 0; i < size; ++i) {
    const int cls = static_cast<int>(rng.UniformInt(0, config.num_classes - 1));
    const Vector center = ToyClassCenter(config, cls);
    for (int j = 0; j < 2; ++j) {
      batch.x0(i, j) = rng.Normal();
      batch.x1(i, j) = center(j) + config.spread * rng.Normal();
    }
    batch.t(i) = rng.Uniform();
    const bool dropped =
        allow_dropout && DropCondition(rng, config.guidance.cond_dropout_prob);
    if (!dropped) batch.cond(i, cls) = 1.0;
  }
  return batch;
}

Vector SampleWithGuidance(const VelocityNet& net, const Vector& x0,
                          const Vector& cond, const GuidanceConfig& guidance,
                          const SamplerConfig& sampler) {
  const Vector uncond = Vector::Zero(cond.size());
  const VelocityFn field = [&](const Vector& x, double t) {
    return CfgVelocity(net.Forward(x, t, cond), net.Forward(x, t, uncond),
                       guidance.cfg_weight);
  };
  return EulerSample(field, x0, sampler.steps);
}

ToyFlowResult TrainToyFlow(const ToyFlowConfig& config) {
  if (config.steps < 0 || config.batch_size < 1 || config.num_classes < 1) {
    throw ConfigError("toy flow: steps >= 0, batch_size >= 1, classes >= 1");
  }
  Rng init_rng(DeriveSeed(config.seed, "init"));
  Rng data_rng(DeriveSeed(config.seed, "data"));
  Rng eval_rng(DeriveSeed(config.seed, "eval"));
  Rng sample_rng(DeriveSeed(config.seed, "sample"));

  ToyFlowResult result{VelocityNet::Random(2, config.num_classes,
                                           config.hidden, init_rng),
                       {}, 0.0, 0.0, 0.0, 0.0};
  const FlowBatch eval_batch =
      DrawToyBatch(config, config.eval_batch_size, eval_rng, false);
  result.initial_loss = result.net.Loss(eval_batch);
  result.log.push_back({0, result.initial_loss});

  std::vector<double> params = result.net.Parameters();
  std::vector<double> grad;
  AdamOptimizer adam(params.size(), config.learning_rate);
  for (int step = 1; step <= config.steps; ++step) {
    const FlowBatch batch =
        DrawToyBatch(config, config.batch_size, data_rng, true);
    result.net.Backward(batch, grad);
    adam.Step(params, grad);
    result.net.SetParameters(params);
    if (step % config.log_every == 0 || step == config.steps) {
      result.log.push_back({step, result.net.Loss(eval_batch)});
    }
  }
  result.final_loss = result.net.Loss(eval_batch);

  double dist_sum = 0.0;
  int correct = 0, total = 0;
  for (int cls = 0; cls < config.num_classes; ++cls) {
    Vector cond = Vector::Zero(config.num_classes);
    cond(cls) = 1.0;
    const Vector center = ToyClassCenter(config, cls);
    for (int s = 0; s < config.samples_per_class; ++s) {
      Vector x0(2);
      x0 << sample_rng.Normal(), sample_rng.Normal();
      const Vector x = SampleWithGuidance(result.net, x0, cond,
                                          config.guidance, config.sampler);
      dist_sum += (x - center).norm();
      int nearest = 0;
      double nearest_dist = std::numeric_limits<double>::infinity();
      for (int c = 0; c < config.num_classes; ++c) {
        const double d = (x - ToyClassCenter(config, c)).norm();
        if (d < nearest_dist) {
          nearest_dist = d;
          nearest = c;
        }
      }
      correct += nearest == cls;
      ++total;
    }
  }
  if (total > 0) {
    result.sample_center_distance = dist_sum / total;
    result.sample_class_accuracy = static_cast<double>(correct) / total;
  }
  return result;
}

nlohmann::json ToyFlowReport(const ToyFlowConfig& config,
                             const ToyFlowResult& result) {
  nlohmann::json log = nlohmann::json::array();
  for (const auto& e : result.log) {
    log.push_back({{"step", e.step}, {"fm_loss", e.fm_loss}});
  }
  return {
      {"config",
       {{"seed", config.seed},
        {"steps", config.steps},
        {"batch_size", config.batch_size},
        {"learning_rate", config.learning_rate},
        {"hidden", config.hidden},
        {"num_classes", config.num_classes},
        {"cfg_weight", config.guidance.cfg_weight},
        {"cond_dropout_prob", config.guidance.cond_dropout_prob},
        {"sampler_steps", config.sampler.steps}}},
      {"log", log},
      {"initial_fm_loss", result.initial_loss},
      {"final_fm_loss", result.final_loss},
      {"loss_reduction", result.initial_loss / result.final_loss},
      {"sample_center_distance", result.sample_center_distance},
      {"sample_class_accuracy", result.sample_class_accuracy},
  };
}

}  // namespace uniedit::flow
