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

#ifndef UNIEDIT_METRICS_REPORT_H_
#define UNIEDIT_METRICS_REPORT_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "uniedit/common/language.h"
#include "uniedit/text/edit.h"

namespace uniedit::metrics {

using Json = nlohmann::json;

// Reference side of one evaluated example, read from an edit-set or
// benchmark manifest row.
struct EvalReference {
  std::string id;
  std::string task;
  Language language = Language::kEn;
  std::string target_text;
  std::optional<text::TokenSpan> target_span;  // into target_text tokens
  std::optional<std::string> mask_payload;
  std::optional<std::string> source_path;  // resolved
  Json params = Json::object();

  static EvalReference FromJson(const Json& row,
                                const std::filesystem::path& root);
};

// {id, text, output_path?}; output_path is needed for RDE/RAE.
struct Hypothesis {
  std::string id;
  std::string text;
  std::optional<std::string> output_path;  // resolved

  static Hypothesis FromJson(const Json& row, const std::filesystem::path& root);
};

// Keys are example ids (output speaker) and "<id>#source" (reference speaker).
using EmbeddingTable = std::map<std::string, std::vector<double>>;

EmbeddingTable LoadEmbeddings(const std::string& path);

struct ExampleScores {
  std::string id;
  std::string task;
  std::optional<double> wer;
  std::optional<bool> acc;
  std::optional<double> no_edit_wer;
  std::optional<double> sim;
  std::optional<double> rde;
  std::optional<double> rae;

  Json ToJson() const;
};

ExampleScores ScoreExample(const EvalReference& ref, const Hypothesis& hyp,
                           const EmbeddingTable& embeddings);

// Definitions header, per-task aggregates (means over examples where the
// metric is defined) and per-example rows sorted by id.
Json BuildReport(std::vector<ExampleScores> scores);

Json Evaluate(const std::vector<EvalReference>& refs,
              const std::vector<Hypothesis>& hyps,
              const EmbeddingTable& embeddings, int jobs = 1);

}  // namespace uniedit::metrics

#endif  // UNIEDIT_METRICS_REPORT_H_
