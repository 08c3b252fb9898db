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

#include "uniedit/forge/benchmark.h"

#include <algorithm>
#include <array>
#include <optional>

#include "uniedit/common/error.h"
#include "uniedit/common/parallel.h"
#include "uniedit/text/tokenize.h"

namespace uniedit::forge {
namespace {

using text::EditInstruction;
using text::EditKind;
using text::InstructionType;
using text::Relation;

constexpr std::array<TaskKind, 3> kSemanticTasks = {
    TaskKind::kDeletion, TaskKind::kInsertion, TaskKind::kSubstitution};
constexpr std::array<InstructionType, 2> kTypes = {
    InstructionType::kIndexBased, InstructionType::kContentBased};
constexpr std::array<Language, 2> kLanguages = {Language::kZh, Language::kEn};

const std::array<const char*, 7> kFallbackEn = {
    "really", "quite", "again", "very quietly", "at home", "this morning",
    "without a doubt"};
const std::array<const char*, 7> kFallbackZh = {
    "非常", "今天", "突然", "其实", "一起", "慢慢地", "在家里"};

bool HasQuote(std::string_view s) {
  static constexpr std::string_view kQuotes[] = {
      "'", "\"", "`", "‘", "’", "“", "”", "「", "」"};
  for (auto q : kQuotes) {
    if (s.find(q) != std::string_view::npos) return true;
  }
  return s.find(text::kMaskToken) != std::string_view::npos;
}

EditKind ToEditKind(TaskKind task) {
  switch (task) {
    case TaskKind::kDeletion:
      return EditKind::kDeletion;
    case TaskKind::kInsertion:
      return EditKind::kInsertion;
    case TaskKind::kSubstitution:
      return EditKind::kSubstitution;
    default:
      throw ValidationError("task '" + TaskName(task) + "' is not a text edit");
  }
}

TaskKind ToTask(EditKind kind) {
  switch (kind) {
    case EditKind::kDeletion:
      return TaskKind::kDeletion;
    case EditKind::kInsertion:
      return TaskKind::kInsertion;
    case EditKind::kSubstitution:
      return TaskKind::kSubstitution;
  }
  return TaskKind::kDeletion;
}

int Pick(Rng& rng, int lo, int hi) {
  return static_cast<int>(rng.UniformInt(lo, hi));
}

// Random run of tokens with length in [min_len, max_len], capped by n.
std::optional<text::TokenSpan> RandomRun(int n, int min_len, int max_len,
                                         Rng& rng) {
  max_len = std::min(max_len, n);
  if (max_len < min_len) return std::nullopt;
  const int len = Pick(rng, min_len, max_len);
  const int start = Pick(rng, 0, n - len);
  return text::TokenSpan{start, start + len};
}

// Fills the locator and relation of `ins`; false when the draw is unusable.
bool DrawLocator(EditInstruction& ins, const std::vector<std::string>& tokens,
                 Language language, InstructionType type, TemplateStyle style,
                 Rng& rng) {
  const int n = static_cast<int>(tokens.size());
  const bool full = style == TemplateStyle::kFull;
  const bool zh = language == Language::kZh;
  // A removal must leave at least one token behind.
  const int max_removed = std::min(zh ? 4 : 3, n - 1);

  if (type == InstructionType::kContentBased) {
    const int min_len = zh ? 2 : 1;
    const int cap = ins.kind == EditKind::kInsertion ? (zh ? 4 : 3) : max_removed;
    const auto run = RandomRun(n, min_len, cap, rng);
    if (!run) return false;
    std::string anchor = text::JoinTokens(
        std::span<const std::string>(tokens).subspan(run->begin, run->size()),
        language);
    if (HasQuote(anchor)) return false;
    ins.locator = text::ContentAnchor{std::move(anchor)};
    if (ins.kind == EditKind::kInsertion) {
      ins.relation = (full && rng.Bernoulli(0.5)) ? Relation::kBefore
                                                   : Relation::kAfter;
    }
    return true;
  }

  if (ins.kind == EditKind::kInsertion) {
    const int variant = full ? Pick(rng, 0, 3) : (rng.Bernoulli(0.2) ? 3 : 0);
    if (variant == 2 || variant == 3) {
      ins.relation = variant == 2 ? Relation::kAtStart : Relation::kAtEnd;
      ins.locator = std::monostate{};
      return true;
    }
    const int i = Pick(rng, 1, n);
    ins.relation = variant == 0 ? Relation::kAfter : Relation::kBefore;
    ins.locator = text::IndexRange{i, i};
    return true;
  }

  // Deletion / substitution.
  const int variant = full ? Pick(rng, 0, 2) : 0;
  if (variant == 0) {
    const auto run = RandomRun(n, 1, std::max(max_removed, 1), rng);
    if (!run || (ins.kind == EditKind::kDeletion && run->size() >= n)) {
      return false;
    }
    ins.locator = text::IndexRange{run->begin + 1, run->end};
    return true;
  }
  if (max_removed < 1) return false;
  ins.locator = text::EdgeSpan{variant == 2, Pick(rng, 1, max_removed)};
  return true;
}

void SortById(std::vector<BenchmarkEntry>& entries,
              std::vector<SkippedItem>& skipped) {
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
  std::sort(skipped.begin(), skipped.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
}

BenchmarkEntry MakeEntry(const audio::ManifestEntry& item, TaskKind task,
                         InstructionType type, const SynthesizedEdit& edit) {
  BenchmarkEntry e;
  e.id = item.id;
  e.task = task;
  e.language = item.language;
  e.type = type;
  e.instruction = edit.instruction_text;
  e.source_path = item.audio_path;
  e.source_text = text::JoinTokens(edit.result.source_tokens, item.language);
  e.target_text = edit.result.edited_text;
  e.cot = edit.cot;
  e.target_span = edit.result.span.target;
  return e;
}

CellKey DrawCell(const CellWeights& weights, Language language, Rng& rng) {
  double total = 0.0;
  for (const auto& [cell, w] : weights) {
    if (cell.language == language && w > 0) total += w;
  }
  if (!(total > 0)) {
    throw ConfigError("distribution has no weight for language " +
                      LanguageCode(language));
  }
  double u = rng.Uniform() * total;
  std::optional<CellKey> last;
  for (const auto& [cell, w] : weights) {
    if (cell.language != language || !(w > 0)) continue;
    last = cell;
    if (u < w) return cell;
    u -= w;
  }
  return *last;
}

}  // namespace

std::string CellName(const CellKey& cell) {
  return LanguageCode(cell.language) + "/" + TaskName(cell.task) + "/" +
         text::InstructionTypeName(cell.type);
}

CellCounts BasicBenchmarkCounts() {
  using enum TaskKind;
  const auto I = InstructionType::kIndexBased;
  const auto C = InstructionType::kContentBased;
  const auto Z = Language::kZh;
  const auto E = Language::kEn;
  return {
      {{kDeletion, Z, I}, 92},      {{kInsertion, Z, I}, 65},
      {{kSubstitution, Z, I}, 29},  {{kDeletion, Z, C}, 78},
      {{kInsertion, Z, C}, 105},    {{kSubstitution, Z, C}, 130},
      {{kDeletion, E, I}, 47},      {{kInsertion, E, I}, 79},
      {{kSubstitution, E, I}, 29},  {{kDeletion, E, C}, 133},
      {{kInsertion, E, C}, 81},     {{kSubstitution, E, C}, 150},
  };
}

CellCounts FullBenchmarkCounts() {
  using enum TaskKind;
  const auto I = InstructionType::kIndexBased;
  const auto C = InstructionType::kContentBased;
  const auto Z = Language::kZh;
  const auto E = Language::kEn;
  return {
      {{kDeletion, Z, I}, 186},     {{kInsertion, Z, I}, 180},
      {{kSubstitution, Z, I}, 36},  {{kDeletion, Z, C}, 95},
      {{kInsertion, Z, C}, 110},    {{kSubstitution, Z, C}, 289},
      {{kDeletion, E, I}, 138},     {{kInsertion, E, I}, 100},
      {{kSubstitution, E, I}, 67},  {{kDeletion, E, C}, 62},
      {{kInsertion, E, C}, 99},     {{kSubstitution, E, C}, 189},
  };
}

Json CountsToJson(const CellCounts& counts) {
  Json j = Json::object();
  for (const auto& [cell, n] : counts) {
    j[LanguageCode(cell.language)][TaskName(cell.task)]
     [text::InstructionTypeName(cell.type)] = n;
  }
  return j;
}

CellCounts CountsFromJson(const Json& j) {
  if (!j.is_object()) throw FormatError("expected counts must be a JSON object");
  CellCounts counts;
  for (const auto& [lang, tasks] : j.items()) {
    for (const auto& [task, types] : tasks.items()) {
      for (const auto& [type, n] : types.items()) {
        if (!n.is_number_integer() || n.get<long>() < 0) {
          throw FormatError("count for " + lang + "/" + task + "/" + type +
                            " must be a non-negative integer");
        }
        counts[{ParseTask(task), ParseLanguage(lang), text::ParseInstructionType(type)}] =
            n.get<long>();
      }
    }
  }
  return counts;
}

CellWeights WeightsFromCounts(const CellCounts& counts) {
  CellWeights w;
  for (const auto& [cell, n] : counts) w[cell] = static_cast<double>(n);
  return w;
}

CellWeights TaskDistribution(double deletion, double insertion,
                             double substitution, double index_fraction) {
  const std::array<double, 3> task_w = {deletion, insertion, substitution};
  for (double v : task_w) {
    if (!(v >= 0)) throw ConfigError("task weights must be non-negative");
  }
  if (!(index_fraction >= 0 && index_fraction <= 1)) {
    throw ConfigError("index fraction must lie in [0, 1]");
  }
  CellWeights w;
  for (Language lang : kLanguages) {
    for (std::size_t t = 0; t < kSemanticTasks.size(); ++t) {
      w[{kSemanticTasks[t], lang, InstructionType::kIndexBased}] =
          task_w[t] * index_fraction;
      w[{kSemanticTasks[t], lang, InstructionType::kContentBased}] =
          task_w[t] * (1.0 - index_fraction);
    }
  }
  return w;
}

PayloadPool::PayloadPool(const std::vector<audio::ManifestEntry>& entries) {
  for (const auto& e : entries) {
    auto tokens = text::TokenizeTranscript(e.transcript, e.language);
    std::erase_if(tokens, [](const std::string& t) { return HasQuote(t); });
    if (!tokens.empty()) tokens_[e.language].push_back(std::move(tokens));
  }
}

std::string PayloadPool::Draw(Language language, Rng& rng) const {
  const bool zh = language == Language::kZh;
  const auto it = tokens_.find(language);
  if (it != tokens_.end() && !it->second.empty()) {
    const auto& pool = it->second;
    const auto& tokens = pool[rng.UniformInt(0, static_cast<int64_t>(pool.size()) - 1)];
    const int n = static_cast<int>(tokens.size());
    const auto run = RandomRun(n, zh ? 2 : 1, zh ? 4 : 3, rng);
    if (run) {
      return text::JoinTokens(
          std::span<const std::string>(tokens).subspan(run->begin, run->size()),
          language);
    }
  }
  return zh ? kFallbackZh[rng.UniformInt(0, kFallbackZh.size() - 1)]
            : kFallbackEn[rng.UniformInt(0, kFallbackEn.size() - 1)];
}

SynthesizedEdit SynthesizeEdit(const std::string& transcript, Language language,
                               TaskKind task, InstructionType type,
                               TemplateStyle style, const PayloadPool& payloads,
                               Rng& rng, int max_attempts) {
  const auto tokens = text::TokenizeTranscript(transcript, language);
  if (tokens.empty()) throw ResolutionError("transcript is empty");
  const std::string original = text::JoinTokens(tokens, language);
  std::string last_error = "no usable locator";
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    EditInstruction ins;
    ins.kind = ToEditKind(task);
    ins.instruction_language =
        style == TemplateStyle::kBasic ? Language::kEn : language;
    if (!DrawLocator(ins, tokens, language, type, style, rng)) continue;
    if (ins.kind != EditKind::kDeletion) ins.payload = payloads.Draw(language, rng);
    try {
      SynthesizedEdit out;
      out.instruction_text = text::FormatInstruction(ins);
      out.instruction = text::ParseInstruction(out.instruction_text);
      if (!(out.instruction == ins)) {
        last_error = "instruction does not round-trip: " + out.instruction_text;
        continue;
      }
      out.result = text::ApplyEdit(transcript, out.instruction, language);
      if (out.result.edited_text == original || out.result.tokens.empty()) {
        last_error = "edit leaves nothing or changes nothing";
        continue;
      }
      out.cot = text::MakeCot(out.result.edited_text, out.result.span.target,
                              language);
      if (text::ReconstructCot(out.cot, language) != out.result.edited_text) {
        last_error = "CoT does not reconstruct";
        continue;
      }
      return out;
    } catch (const Error& e) {
      last_error = e.what();
    }
  }
  throw ResolutionError("no resolvable " + TaskName(task) + "/" +
                        text::InstructionTypeName(type) + " edit after " +
                        std::to_string(max_attempts) + " draws (" + last_error +
                        ")");
}

Json BenchmarkEntry::ToJson() const {
  return Json{{"id", id},
              {"task", TaskName(task)},
              {"language", LanguageCode(language)},
              {"instruction_type", text::InstructionTypeName(type)},
              {"instruction", instruction},
              {"source_path", source_path},
              {"source_text", source_text},
              {"target_text", target_text},
              {"cot", cot.text},
              {"mask_payload", cot.mask_payload},
              {"target_span", {target_span.begin, target_span.end}}};
}

BenchmarkEntry BenchmarkEntry::FromJson(const Json& j) {
  try {
    BenchmarkEntry e;
    e.id = j.at("id").get<std::string>();
    e.task = ParseTask(j.at("task").get<std::string>());
    e.language = ParseLanguage(j.at("language").get<std::string>());
    e.type = text::ParseInstructionType(j.at("instruction_type").get<std::string>());
    e.instruction = j.at("instruction").get<std::string>();
    e.source_path = j.value("source_path", "");
    e.source_text = j.value("source_text", "");
    e.target_text = j.value("target_text", "");
    e.cot.text = j.value("cot", "");
    e.cot.mask_payload = j.value("mask_payload", "");
    if (j.contains("target_span")) {
      e.target_span = {j["target_span"].at(0).get<int>(),
                       j["target_span"].at(1).get<int>()};
    }
    return e;
  } catch (const Json::exception& ex) {
    throw FormatError(std::string("bad benchmark entry: ") + ex.what());
  }
}

CellCounts BenchmarkManifest::Tally() const {
  CellCounts t;
  for (const auto& e : entries) ++t[e.cell()];
  return t;
}

BenchmarkManifest GenerateBenchmark(
    const std::vector<audio::ManifestEntry>& entries,
    const BenchmarkConfig& config) {
  audio::CheckUniqueIds(entries);
  const PayloadPool payloads(entries);
  BenchmarkManifest out;

  if (config.mode == AssignmentMode::kProportional) {
    std::vector<std::optional<BenchmarkEntry>> made(entries.size());
    std::vector<std::string> reasons(entries.size());
    ParallelFor(entries.size(), config.jobs, [&](std::size_t i) {
      const auto& item = entries[i];
      Rng rng(DeriveSeed(config.seed, item.id));
      const CellKey cell = DrawCell(config.weights, item.language, rng);
      try {
        const auto edit = SynthesizeEdit(item.transcript, item.language, cell.task,
                                         cell.type, config.style, payloads, rng);
        made[i] = MakeEntry(item, cell.task, cell.type, edit);
      } catch (const ResolutionError& e) {
        reasons[i] = e.what();
      }
    });
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (made[i]) {
        out.entries.push_back(std::move(*made[i]));
      } else {
        out.skipped.push_back({entries[i].id, reasons[i]});
      }
    }
    SortById(out.entries, out.skipped);
    return out;
  }

  // Quota mode: a seeded shuffle of items per language fills a seeded
  // shuffle of cell slots; items that cannot realize their slot are skipped.
  for (Language lang : kLanguages) {
    std::vector<const audio::ManifestEntry*> items;
    for (const auto& e : entries) {
      if (e.language == lang) items.push_back(&e);
    }
    std::sort(items.begin(), items.end(),
              [](const auto* a, const auto* b) { return a->id < b->id; });
    std::vector<CellKey> slots;
    for (const auto& [cell, n] : config.quota) {
      if (cell.language != lang) continue;
      if (n < 0) throw ConfigError("negative quota for " + CellName(cell));
      slots.insert(slots.end(), n, cell);
    }
    Rng order(DeriveSeed(config.seed, "quota-order/" + LanguageCode(lang)));
    const auto shuffle = [&order](auto& v) {
      for (std::size_t i = v.size(); i > 1; --i) {
        std::swap(v[i - 1], v[order.UniformInt(0, static_cast<int64_t>(i) - 1)]);
      }
    };
    shuffle(items);
    shuffle(slots);
    std::size_t next = 0;
    for (const CellKey& cell : slots) {
      bool filled = false;
      while (!filled && next < items.size()) {
        const auto& item = *items[next++];
        Rng rng(DeriveSeed(config.seed, item.id));
        try {
          const auto edit = SynthesizeEdit(item.transcript, lang, cell.task,
                                           cell.type, config.style, payloads, rng);
          out.entries.push_back(MakeEntry(item, cell.task, cell.type, edit));
          filled = true;
        } catch (const ResolutionError& e) {
          out.skipped.push_back({item.id, e.what()});
        }
      }
      if (!filled) {
        throw PreconditionError("not enough " + LanguageCode(lang) +
                                " items to fill the quota (" +
                                std::to_string(slots.size()) + " slots)");
      }
    }
  }
  SortById(out.entries, out.skipped);
  return out;
}

Json ValidationReport::ToJson() const {
  Json mism = Json::array();
  for (const auto& m : mismatches) {
    mism.push_back({{"cell", CellName(m.cell)},
                    {"expected", m.expected},
                    {"actual", m.actual}});
  }
  return Json{{"ok", ok},
              {"tally", CountsToJson(tally)},
              {"mismatches", mism},
              {"inconsistent_ids", inconsistent_ids}};
}

ValidationReport ValidateBenchmark(const std::vector<BenchmarkEntry>& entries,
                                   const CellCounts& expected) {
  ValidationReport report;
  for (const auto& e : entries) {
    ++report.tally[e.cell()];
    try {
      const auto ins = text::ParseInstruction(e.instruction);
      if (ToTask(ins.kind) != e.task || ins.type() != e.type) {
        report.inconsistent_ids.push_back(e.id);
      }
    } catch (const Error&) {
      report.inconsistent_ids.push_back(e.id);
    }
  }
  CellCounts keys = expected;
  for (const auto& [cell, n] : report.tally) keys.emplace(cell, 0);
  for (const auto& [cell, unused] : keys) {
    const auto e = expected.find(cell);
    const auto a = report.tally.find(cell);
    const long want = e == expected.end() ? 0 : e->second;
    const long got = a == report.tally.end() ? 0 : a->second;
    if (want != got) report.mismatches.push_back({cell, want, got});
  }
  report.ok = report.mismatches.empty() && report.inconsistent_ids.empty();
  return report;
}

}  // namespace uniedit::forge
