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

#ifndef UNIEDIT_FORGE_BENCHMARK_H_
#define UNIEDIT_FORGE_BENCHMARK_H_

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "uniedit/audio/manifest.h"
#include "uniedit/common/language.h"
#include "uniedit/common/rng.h"
#include "uniedit/forge/pairs.h"
#include "uniedit/text/cot.h"
#include "uniedit/text/edit.h"
#include "uniedit/text/instruction.h"

namespace uniedit::forge {

using Json = nlohmann::json;

// One (task, language, instruction type) tally cell.
struct CellKey {
  TaskKind task = TaskKind::kDeletion;
  Language language = Language::kEn;
  text::InstructionType type = text::InstructionType::kIndexBased;
  auto operator<=>(const CellKey&) const = default;
};

std::string CellName(const CellKey& cell);

using CellCounts = std::map<CellKey, long>;
using CellWeights = std::map<CellKey, double>;

// Per-cell item counts of the basic and full semantic benchmarks.
CellCounts BasicBenchmarkCounts();
CellCounts FullBenchmarkCounts();

// {"zh": {"deletion": {"index": n, "content": m}, ...}, "en": {...}}
Json CountsToJson(const CellCounts& counts);
CellCounts CountsFromJson(const Json& j);

CellWeights WeightsFromCounts(const CellCounts& counts);

// Per-language task weights (deletion, insertion, substitution); each task
// splits between index and content instructions by `index_fraction`.
CellWeights TaskDistribution(double deletion, double insertion,
                             double substitution, double index_fraction = 0.5);

// Basic templates are English-only; full templates follow the transcript's
// language and add first/last-N and sentence-edge variants.
enum class TemplateStyle { kBasic, kFull };

// Payload candidates drawn from other transcripts of the same language.
class PayloadPool {
 public:
  PayloadPool() = default;
  explicit PayloadPool(const std::vector<audio::ManifestEntry>& entries);

  // A short token run, never empty and free of quote characters.
  std::string Draw(Language language, Rng& rng) const;

 private:
  std::map<Language, std::vector<std::vector<std::string>>> tokens_;
};

struct SynthesizedEdit {
  text::EditInstruction instruction;
  std::string instruction_text;
  text::EditResult result;
  text::CotText cot;
};

// Draws an instruction of the requested cell that formats, re-parses to
// itself and resolves uniquely against `transcript`. Throws ResolutionError
// after `max_attempts` failed draws.
SynthesizedEdit SynthesizeEdit(const std::string& transcript, Language language,
                               TaskKind task, text::InstructionType type,
                               TemplateStyle style, const PayloadPool& payloads,
                               Rng& rng, int max_attempts = 32);

struct BenchmarkEntry {
  std::string id;
  TaskKind task = TaskKind::kDeletion;
  Language language = Language::kEn;
  text::InstructionType type = text::InstructionType::kIndexBased;
  std::string instruction;
  std::string source_path;
  std::string source_text;
  std::string target_text;
  text::CotText cot;
  text::TokenSpan target_span;

  CellKey cell() const { return {task, language, type}; }
  Json ToJson() const;
  static BenchmarkEntry FromJson(const Json& j);
};

struct SkippedItem {
  std::string id;
  std::string reason;
};

struct BenchmarkManifest {
  std::vector<BenchmarkEntry> entries;  // sorted by id
  std::vector<SkippedItem> skipped;     // sorted by id

  CellCounts Tally() const;
};

enum class AssignmentMode {
  kProportional,  // each item draws its cell from the weights
  kQuota,         // exactly the requested count per cell
};

struct BenchmarkConfig {
  AssignmentMode mode = AssignmentMode::kProportional;
  CellWeights weights;  // proportional mode
  CellCounts quota;     // quota mode
  TemplateStyle style = TemplateStyle::kBasic;
  uint64_t seed = 0;
  int jobs = 1;
};

// Deterministic in (entries, config); `jobs` never changes the result.
BenchmarkManifest GenerateBenchmark(
    const std::vector<audio::ManifestEntry>& entries,
    const BenchmarkConfig& config);

struct CellMismatch {
  CellKey cell;
  long expected = 0;
  long actual = 0;
};

struct ValidationReport {
  bool ok = true;
  CellCounts tally;
  std::vector<CellMismatch> mismatches;
  // Entries whose instruction does not parse to their declared cell.
  std::vector<std::string> inconsistent_ids;

  Json ToJson() const;
};

ValidationReport ValidateBenchmark(const std::vector<BenchmarkEntry>& entries,
                                   const CellCounts& expected);

}  // namespace uniedit::forge

#endif  // UNIEDIT_FORGE_BENCHMARK_H_
