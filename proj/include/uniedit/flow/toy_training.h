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

#ifndef UNIEDIT_FLOW_TOY_TRAINING_H_
#define UNIEDIT_FLOW_TOY_TRAINING_H_

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "uniedit/flow/flow_matching.h"
#include "uniedit/flow/velocity_net.h"

namespace uniedit::flow {

// Desk-scale stand-in for per-token latent generation: 2-D points drawn
// around one of `num_classes` centers on a circle, conditioned on the
// one-hot class (the stand-in for the LLM hidden state).
struct ToyFlowConfig {
  uint64_t seed = 0;
  int steps = 2000;
  int batch_size = 128;
  double learning_rate = 3e-3;
  int num_classes = 4;
  double radius = 3.0;
  double spread = 0.1;
  std::vector<int> hidden = {64, 64, 64};
  GuidanceConfig guidance;
  SamplerConfig sampler;
  int log_every = 100;
  int eval_batch_size = 512;
  int samples_per_class = 64;
};

struct ToyLogEntry {
  int step;
  double fm_loss;  // on the fixed, fully conditioned evaluation batch
};

struct ToyFlowResult {
  VelocityNet net;
  std::vector<ToyLogEntry> log;
  double initial_loss = 0.0;
  double final_loss = 0.0;
  // Mean distance of CFG-guided Euler samples to their class center, and
  // the fraction whose nearest center is the conditioned one.
  double sample_center_distance = 0.0;
  double sample_class_accuracy = 0.0;
};

Vector ToyClassCenter(const ToyFlowConfig& config, int cls);

// Draws a training batch; conditioning is zeroed per row with the configured
// dropout probability.
FlowBatch DrawToyBatch(const ToyFlowConfig& config, int size, Rng& rng,
                       bool allow_dropout);

// CFG-guided Euler sample for one condition vector (zeros = unconditional).
Vector SampleWithGuidance(const VelocityNet& net, const Vector& x0,
                          const Vector& cond, const GuidanceConfig& guidance,
                          const SamplerConfig& sampler);

// Single-threaded training; a pure function of the config.
ToyFlowResult TrainToyFlow(const ToyFlowConfig& config);

nlohmann::json ToyFlowReport(const ToyFlowConfig& config,
                             const ToyFlowResult& result);

}  // namespace uniedit::flow

#endif  // UNIEDIT_FLOW_TOY_TRAINING_H_
