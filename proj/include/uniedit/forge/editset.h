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

#ifndef UNIEDIT_FORGE_EDITSET_H_
#define UNIEDIT_FORGE_EDITSET_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "uniedit/audio/manifest.h"
#include "uniedit/audio/wav.h"
#include "uniedit/forge/pairs.h"
#include "uniedit/text/cot.h"
#include "uniedit/text/instruction.h"

namespace uniedit::forge {

using Json = nlohmann::json;

// One row of the edit-set manifest. Semantic rows carry a CoT and a token
// span into target_text; acoustic rows carry neither.
struct EditExample {
  std::string id;
  TaskKind task = TaskKind::kDeletion;
  Language language = Language::kEn;
  std::string source_path;
  std::string target_path;
  std::string instruction;
  std::optional<text::CotText> cot;
  FrameSpan edit_span_frames;
  double loss_weight = 1.0;  // applied on edit_span_frames
  int target_frames = 0;
  std::string source_text;
  std::string target_text;
  std::optional<text::TokenSpan> target_span;
  std::optional<text::InstructionType> instruction_type;
  Json params = Json::object();
  std::string cut_mode;  // "alignment" or "proportional"; semantic only

  std::vector<double> LossWeights() const;
  Json ToJson() const;
  static EditExample FromJson(const Json& j);
};

using TaskWeights = std::map<TaskKind, double>;

// Equal weight on every task that has a constructor; the noise-driven tasks
// only when `with_noise`.
TaskWeights DefaultTaskWeights(bool with_noise);

// "deletion:1,insertion:2,..." -> weights.
TaskWeights ParseTaskWeights(const std::string& spec);

struct EditsetConfig {
  uint64_t seed = 0;
  int jobs = 1;
  TaskWeights tasks;
  double edit_weight = kDefaultEditWeight;
};

// Sample boundaries of each token: from an "alignment" list of
// [start_s, end_s] pairs in the entry's extra fields when present, else
// spread proportionally over the audio and snapped to 320-sample frames.
struct TokenTimes {
  std::vector<long> begin;
  std::vector<long> end;
  std::string mode;
};

TokenTimes EstimateTokenTimes(const audio::ManifestEntry& entry,
                              std::size_t token_count, long num_samples,
                              int sample_rate);

struct EditsetItem {
  EditExample example;
  audio::Waveform source;
  audio::Waveform target;
};

// Builds one example; throws ResolutionError when the item cannot realize
// the drawn task.
EditsetItem BuildEditExample(const audio::ManifestEntry& entry,
                             const audio::Waveform& audio,
                             const std::vector<const audio::ManifestEntry*>& donors,
                             const std::filesystem::path& audio_root,
                             const std::vector<audio::Waveform>& noise_pool,
                             const EditsetConfig& config);

struct EditsetSummary {
  std::vector<EditExample> examples;                    // sorted by id
  std::vector<std::pair<std::string, std::string>> skipped;  // (id, reason)
};

std::vector<audio::Waveform> LoadNoiseDir(const std::filesystem::path& dir);

// Reads `manifest_path`, writes audio under out_dir/audio plus
// out_dir/editset.jsonl and out_dir/skipped.jsonl.
EditsetSummary BuildEditset(const std::filesystem::path& manifest_path,
                            const std::vector<audio::Waveform>& noise_pool,
                            const std::filesystem::path& out_dir,
                            const EditsetConfig& config);

}  // namespace uniedit::forge

#endif  // UNIEDIT_FORGE_EDITSET_H_
