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

#include "uniedit/metrics/report.h"

#include <algorithm>
#include <fstream>

#include "uniedit/audio/manifest.h"
#include "uniedit/audio/wav.h"
#include "uniedit/common/error.h"
#include "uniedit/common/parallel.h"
#include "uniedit/dsp/effects.h"
#include "uniedit/metrics/metrics.h"
#include "uniedit/text/tokenize.h"

namespace uniedit::metrics {
namespace {

namespace fs = std::filesystem;

std::string ResolvePath(const fs::path& root, const std::string& p) {
  const fs::path path(p);
  return (path.is_absolute() ? path : root / path).string();
}

std::optional<text::TokenSpan> SpanField(const Json& row) {
  if (!row.contains("target_span") || row["target_span"].is_null()) return std::nullopt;
  return text::TokenSpan{row["target_span"].at(0).get<int>(),
                         row["target_span"].at(1).get<int>()};
}

std::optional<std::string> StringField(const Json& row, const char* key) {
  if (!row.contains(key) || row[key].is_null()) return std::nullopt;
  return row[key].get<std::string>();
}

Json Optional(const auto& v) {
  if (!v) return nullptr;
  return Json(*v);
}

const Json& Definitions() {
  static const Json defs = {
      {"wer",
       "Levenshtein distance / reference length over scoring tokens (zh "
       "characters, en words; lowercased, punctuation removed); aggregate is "
       "the mean of per-example values"},
      {"acc",
       "alignment-restricted exact match: hypothesis tokens charged to the "
       "target span (insertions charged to the preceding reference token) "
       "equal the payload; for deletions, no hypothesis token is charged "
       "between the tokens flanking the removal point"},
      {"no_edit_wer",
       "errors charged to reference tokens outside the target span / number "
       "of such tokens"},
      {"sim", "cosine similarity between embeddings <id> and <id>#source"},
      {"rde", "|output duration - source duration / rate| / (source duration / rate)"},
      {"rae", "|output peak - factor * source peak| / (factor * source peak)"},
  };
  return defs;
}

void Accumulate(Json& agg, const char* key, const std::optional<double>& v) {
  if (!v) return;
  if (!agg.contains(key)) agg[key] = Json{{"sum", 0.0}, {"count", 0}};
  agg[key]["sum"] = agg[key].value("sum", 0.0) + *v;
  agg[key]["count"] = agg[key].value("count", 0) + 1;
}

}  // namespace

EvalReference EvalReference::FromJson(const Json& row, const fs::path& root) {
  try {
    EvalReference r;
    r.id = row.at("id").get<std::string>();
    r.task = row.at("task").get<std::string>();
    r.language = ParseLanguage(row.at("language").get<std::string>());
    r.target_text = row.contains("target_text") ? row["target_text"].get<std::string>()
                                                : row.at("transcript").get<std::string>();
    r.target_span = SpanField(row);
    r.mask_payload = StringField(row, "mask_payload");
    if (auto p = StringField(row, "source_path")) r.source_path = ResolvePath(root, *p);
    r.params = row.value("params", Json::object());
    return r;
  } catch (const Json::exception& e) {
    throw FormatError(std::string("bad reference row: ") + e.what());
  }
}

Hypothesis Hypothesis::FromJson(const Json& row, const fs::path& root) {
  try {
    Hypothesis h;
    h.id = row.at("id").get<std::string>();
    h.text = row.value("text", "");
    if (auto p = StringField(row, "output_path")) h.output_path = ResolvePath(root, *p);
    return h;
  } catch (const Json::exception& e) {
    throw FormatError(std::string("bad hypothesis row: ") + e.what());
  }
}

EmbeddingTable LoadEmbeddings(const std::string& path) {
  EmbeddingTable table;
  for (const auto& row : audio::ReadJsonLines(path)) {
    try {
      const auto id = row.at("id").get<std::string>();
      if (!table.emplace(id, row.at("vector").get<std::vector<double>>()).second) {
        throw ValidationError("duplicate embedding id '" + id + "' in " + path);
      }
    } catch (const Json::exception& e) {
      throw FormatError(path + ": bad embedding row: " + e.what());
    }
  }
  return table;
}

Json ExampleScores::ToJson() const {
  return Json{{"id", id},
              {"task", task},
              {"wer", Optional(wer)},
              {"acc", Optional(acc)},
              {"no_edit_wer", Optional(no_edit_wer)},
              {"sim", Optional(sim)},
              {"rde", Optional(rde)},
              {"rae", Optional(rae)}};
}

ExampleScores ScoreExample(const EvalReference& ref, const Hypothesis& hyp,
                           const EmbeddingTable& embeddings) {
  ExampleScores s;
  s.id = ref.id;
  s.task = ref.task;
  const auto raw = text::TokenizeTranscript(ref.target_text, ref.language);
  text::TokenSpan span = ref.target_span.value_or(text::TokenSpan{0, 0});
  const Tokens ref_tokens = ScoringTokensWithSpan(raw, span);
  const Tokens hyp_tokens = ScoringTokens(hyp.text, ref.language);
  if (!ref_tokens.empty()) s.wer = Wer(ref_tokens, hyp_tokens);

  if (ref.target_span && ref.mask_payload) {
    const Alignment a = Align(ref_tokens, hyp_tokens);
    const Tokens payload = ScoringTokens(*ref.mask_payload, ref.language);
    s.acc = EditAcc(payload, hyp_tokens, a, span);
    if (span.size() < static_cast<int>(ref_tokens.size())) {
      s.no_edit_wer = NoEditWer(ref_tokens, hyp_tokens, span);
    }
  }

  const auto out_emb = embeddings.find(ref.id);
  const auto src_emb = embeddings.find(ref.id + "#source");
  if (out_emb != embeddings.end() && src_emb != embeddings.end()) {
    s.sim = CosineSim(out_emb->second, src_emb->second);
  }

  const bool speed = ref.task == "speed" && ref.params.contains("rate");
  const bool volume = ref.task == "volume" && ref.params.contains("factor");
  if ((speed || volume) && hyp.output_path && ref.source_path) {
    const auto source = audio::ReadWav(*ref.source_path, std::nullopt);
    const auto output = audio::ReadWav(*hyp.output_path, std::nullopt);
    if (speed) {
      const double rate = ref.params["rate"].get<double>();
      s.rde = Rde(output.duration_seconds(), source.duration_seconds() / rate);
    } else {
      const double factor = ref.params["factor"].get<double>();
      s.rae = Rae(dsp::PeakAbs(output), factor * dsp::PeakAbs(source));
    }
  }
  return s;
}

Json BuildReport(std::vector<ExampleScores> scores) {
  std::sort(scores.begin(), scores.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
  Json tasks = Json::object();
  Json rows = Json::array();
  for (const auto& s : scores) {
    if (!tasks.contains(s.task)) tasks[s.task] = Json{{"n", 0}};
    Json& agg = tasks[s.task];
    agg["n"] = agg["n"].get<int>() + 1;
    Accumulate(agg, "wer", s.wer);
    Accumulate(agg, "acc", s.acc ? std::optional<double>(*s.acc ? 1.0 : 0.0)
                                 : std::nullopt);
    Accumulate(agg, "no_edit_wer", s.no_edit_wer);
    Accumulate(agg, "sim", s.sim);
    Accumulate(agg, "rde", s.rde);
    Accumulate(agg, "rae", s.rae);
    rows.push_back(s.ToJson());
  }
  for (auto& [task, agg] : tasks.items()) {
    for (const char* key : {"wer", "acc", "no_edit_wer", "sim", "rde", "rae"}) {
      if (!agg.contains(key)) {
        agg[key] = nullptr;
        continue;
      }
      const double mean = agg[key]["sum"].get<double>() / agg[key]["count"].get<int>();
      agg[key] = Json{{"mean", mean}, {"count", agg[key]["count"]}};
    }
  }
  return Json{{"definitions", Definitions()},
              {"num_examples", scores.size()},
              {"tasks", tasks},
              {"examples", rows}};
}

Json Evaluate(const std::vector<EvalReference>& refs,
              const std::vector<Hypothesis>& hyps,
              const EmbeddingTable& embeddings, int jobs) {
  std::map<std::string, const Hypothesis*> by_id;
  for (const auto& h : hyps) {
    if (!by_id.emplace(h.id, &h).second) {
      throw ValidationError("duplicate hypothesis id '" + h.id + "'");
    }
  }
  std::map<std::string, int> seen;
  for (const auto& r : refs) {
    if (++seen[r.id] > 1) throw ValidationError("duplicate reference id '" + r.id + "'");
    if (!by_id.count(r.id)) throw ValidationError("no hypothesis for id '" + r.id + "'");
  }
  for (const auto& [id, h] : by_id) {
    if (!seen.count(id)) throw ValidationError("hypothesis id '" + id + "' is not in the manifest");
  }
  std::vector<ExampleScores> scores(refs.size());
  ParallelFor(refs.size(), jobs, [&](std::size_t i) {
    try {
      scores[i] = ScoreExample(refs[i], *by_id.at(refs[i].id), embeddings);
    } catch (const std::exception& e) {
      throw Error("item " + refs[i].id + ": " + e.what());
    }
  });
  return BuildReport(std::move(scores));
}

}  // namespace uniedit::metrics
