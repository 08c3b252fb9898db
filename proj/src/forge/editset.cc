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

#include "uniedit/forge/editset.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <sstream>

#include "uniedit/common/error.h"
#include "uniedit/common/parallel.h"
#include "uniedit/dsp/framing.h"
#include "uniedit/text/edit.h"
#include "uniedit/text/tokenize.h"

namespace uniedit::forge {
namespace {

namespace fs = std::filesystem;
using audio::ManifestEntry;
using audio::Waveform;
using text::EditInstruction;
using text::EditKind;
using text::InstructionType;
using text::Relation;
using text::TokenSpan;
using Tokens = std::vector<std::string>;

constexpr std::array<double, 7> kSpeedRates = {0.5, 0.7, 0.8, 1.2, 1.3, 1.5, 1.7};
constexpr std::array<double, 12> kPitchSteps = {-6, -5, -4, -3, -2, -1,
                                                1,  2,  3,  4,  5,  6};
constexpr std::array<double, 5> kVolumeFactors = {0.3, 0.5, 0.7, 1.3, 1.5};
constexpr double kAddSoundSnrMinDb = 5.0;
constexpr double kAddSoundSnrMaxDb = 20.0;
constexpr int kMaxDraws = 16;

template <typename T, std::size_t N>
T PickFrom(const std::array<T, N>& values, Rng& rng) {
  return values[rng.UniformInt(0, static_cast<int64_t>(N) - 1)];
}

int MaxRun(Language language) { return language == Language::kZh ? 4 : 3; }

Tokens Slice(const Tokens& t, int begin, int end) {
  return Tokens(t.begin() + begin, t.begin() + end);
}

Tokens Concat(std::initializer_list<Tokens> parts) {
  Tokens out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

SampleSpan TokenSamples(const TokenTimes& times, int begin, int end) {
  return {times.begin[begin], times.end[end - 1]};
}

long Boundary(const TokenTimes& times, int p) {
  return p < static_cast<int>(times.begin.size()) ? times.begin[p]
                                                  : times.end.back();
}

struct TextEdit {
  EditInstruction instruction;
  std::string instruction_text;
  text::EditResult result;
};

// The instruction formats, re-parses to itself and turns `source` into
// `target` exactly.
std::optional<TextEdit> Realize(const EditInstruction& ins,
                                const std::string& source,
                                const std::string& target, Language language) {
  try {
    TextEdit out;
    out.instruction_text = text::FormatInstruction(ins);
    out.instruction = text::ParseInstruction(out.instruction_text);
    if (!(out.instruction == ins)) return std::nullopt;
    text::EditOptions options;
    options.sentence_case_on_prepend = false;
    out.result = text::ApplyEdit(source, out.instruction, language, options);
    if (out.result.edited_text != target) return std::nullopt;
    return out;
  } catch (const Error&) {
    return std::nullopt;
  }
}

EditInstruction Base(EditKind kind, Language language) {
  EditInstruction ins;
  ins.kind = kind;
  ins.instruction_language = language;
  return ins;
}

// Picks the content form when asked and possible, else the index form.
TextEdit ChooseEdit(bool want_content,
                    const std::vector<EditInstruction>& content_candidates,
                    const EditInstruction& index_form, const Tokens& source,
                    const Tokens& target, Language language) {
  const std::string src = text::JoinTokens(source, language);
  const std::string tgt = text::JoinTokens(target, language);
  if (want_content) {
    for (const auto& ins : content_candidates) {
      if (auto e = Realize(ins, src, tgt, language)) return *e;
    }
  }
  if (auto e = Realize(index_form, src, tgt, language)) return *e;
  throw ResolutionError("no instruction realizes the planned text edit");
}

struct SemanticPlan {
  TextEdit edit;
  AudioPair pair;
};

SemanticPlan PlanInsertion(const Tokens& tokens, const TokenTimes& times,
                           const Waveform& audio, Language language,
                           bool want_content, Rng& rng) {
  const int n = static_cast<int>(tokens.size());
  if (n < 2) throw ResolutionError("need at least two tokens for insertion");
  const int len = static_cast<int>(rng.UniformInt(1, std::min(MaxRun(language), n - 1)));
  const int p = static_cast<int>(rng.UniformInt(0, n - len));
  const SampleSpan cut = TokenSamples(times, p, p + len);
  if (cut.size() <= 0) throw ResolutionError("cut span has no samples");

  const Tokens source = Concat({Slice(tokens, 0, p), Slice(tokens, p + len, n)});
  EditInstruction index_form = Base(EditKind::kInsertion, language);
  index_form.payload = text::JoinTokens(Slice(tokens, p, p + len), language);
  const int m = static_cast<int>(source.size());
  if (p == 0) {
    index_form.relation = Relation::kAtStart;
  } else if (p == m) {
    index_form.relation = Relation::kAtEnd;
  } else {
    index_form.relation = Relation::kAfter;
    index_form.locator = text::IndexRange{p, p};
  }
  std::vector<EditInstruction> content;
  for (int k = 1; k <= MaxRun(language); ++k) {
    EditInstruction ins = Base(EditKind::kInsertion, language);
    ins.payload = index_form.payload;
    if (p - k >= 0) {
      ins.relation = Relation::kAfter;
      ins.locator = text::ContentAnchor{text::JoinTokens(Slice(source, p - k, p), language)};
      content.push_back(ins);
    }
    if (p + k <= m) {
      ins.relation = Relation::kBefore;
      ins.locator = text::ContentAnchor{text::JoinTokens(Slice(source, p, p + k), language)};
      content.push_back(ins);
    }
  }
  return {ChooseEdit(want_content, content, index_form, source, tokens, language),
          ConstructInsertionPair(audio, cut)};
}

SemanticPlan PlanDeletion(const Tokens& tokens, const TokenTimes& times,
                          const Waveform& audio, const Tokens& donor_tokens,
                          const TokenTimes& donor_times, const Waveform& donor_audio,
                          Language language, bool want_content, Rng& rng) {
  const int n = static_cast<int>(tokens.size());
  const int dn = static_cast<int>(donor_tokens.size());
  if (n < 1 || dn < 1) throw ResolutionError("empty transcript");
  const int len = static_cast<int>(rng.UniformInt(1, std::min(MaxRun(language), dn)));
  const int s = static_cast<int>(rng.UniformInt(0, dn - len));
  const SampleSpan art = TokenSamples(donor_times, s, s + len);
  if (art.size() <= 0) throw ResolutionError("artifact span has no samples");
  Waveform artifact;
  artifact.sample_rate = donor_audio.sample_rate;
  artifact.samples.assign(donor_audio.samples.begin() + art.begin,
                          donor_audio.samples.begin() + art.end);

  const int p = static_cast<int>(rng.UniformInt(0, n));
  const Tokens inserted = Slice(donor_tokens, s, s + len);
  const Tokens source = Concat({Slice(tokens, 0, p), inserted, Slice(tokens, p, n)});

  EditInstruction index_form = Base(EditKind::kDeletion, language);
  index_form.locator = text::IndexRange{p + 1, p + len};
  EditInstruction content = Base(EditKind::kDeletion, language);
  content.locator = text::ContentAnchor{text::JoinTokens(inserted, language)};
  return {ChooseEdit(want_content, {content}, index_form, source, tokens, language),
          ConstructDeletionPair(audio, artifact, Boundary(times, p))};
}

SemanticPlan PlanSubstitution(const Tokens& tokens, const TokenTimes& times,
                              const Waveform& audio, Language language,
                              bool want_content, Rng& rng) {
  const int n = static_cast<int>(tokens.size());
  if (n < 2) throw ResolutionError("need at least two tokens for substitution");
  for (int draw = 0; draw < kMaxDraws; ++draw) {
    const int len = static_cast<int>(rng.UniformInt(1, std::min(MaxRun(language), n / 2)));
    const int d = static_cast<int>(rng.UniformInt(0, n - len));
    const int s = static_cast<int>(rng.UniformInt(0, n - len));
    if (s < d + len && d < s + len) continue;
    const Tokens src_run = Slice(tokens, s, s + len);
    if (src_run == Slice(tokens, d, d + len)) continue;
    const SampleSpan src_span = TokenSamples(times, s, s + len);
    const SampleSpan dst_span = TokenSamples(times, d, d + len);
    if (src_span.size() <= 0 || dst_span.size() <= 0) continue;

    const Tokens source = Concat({Slice(tokens, 0, d), src_run, Slice(tokens, d + len, n)});
    EditInstruction index_form = Base(EditKind::kSubstitution, language);
    index_form.locator = text::IndexRange{d + 1, d + len};
    index_form.payload = text::JoinTokens(Slice(tokens, d, d + len), language);
    // The moved run occurs twice in the source, so content anchors widen
    // with neighbors until they pin the destination.
    std::vector<EditInstruction> content;
    for (const auto& [l, r] : {std::pair{0, 0}, {1, 0}, {0, 1}, {1, 1}, {2, 0}, {0, 2}}) {
      const int b = d - l, e = d + len + r;
      if (b < 0 || e > n) continue;
      EditInstruction ins = Base(EditKind::kSubstitution, language);
      ins.locator = text::ContentAnchor{text::JoinTokens(Slice(source, b, e), language)};
      ins.payload = text::JoinTokens(Slice(tokens, b, e), language);
      content.push_back(ins);
    }
    return {ChooseEdit(want_content, content, index_form, source, tokens, language),
            ConstructSubstitutionPair(audio, src_span, dst_span)};
  }
  throw ResolutionError("no non-overlapping substitution spans found");
}

TaskKind DrawTask(const TaskWeights& weights, Rng& rng) {
  double total = 0;
  for (const auto& [task, w] : weights) total += std::max(w, 0.0);
  if (!(total > 0)) throw ConfigError("task distribution has no positive weight");
  double u = rng.Uniform() * total;
  TaskKind last = weights.begin()->first;
  for (const auto& [task, w] : weights) {
    if (!(w > 0)) continue;
    last = task;
    if (u < w) return task;
    u -= w;
  }
  return last;
}

std::string FileStem(const std::string& id) {
  std::string out;
  for (char c : id) {
    const bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '-' ||
                    c == '_' || c == '.';
    out += ok ? c : '_';
  }
  return out;
}

fs::path Resolve(const fs::path& root, const std::string& path) {
  const fs::path p(path);
  return p.is_absolute() ? p : root / p;
}

}  // namespace

std::vector<double> EditExample::LossWeights() const {
  return BuildLossWeights(target_frames, edit_span_frames, loss_weight);
}

Json EditExample::ToJson() const {
  Json j{{"id", id},
         {"task", TaskName(task)},
         {"language", LanguageCode(language)},
         {"source_path", source_path},
         {"target_path", target_path},
         {"instruction", instruction},
         {"cot", nullptr},
         {"mask_payload", nullptr},
         {"edit_span_frames", {edit_span_frames.begin, edit_span_frames.end}},
         {"loss_weight", loss_weight},
         {"target_frames", target_frames},
         {"source_text", source_text},
         {"target_text", target_text},
         {"target_span", nullptr},
         {"instruction_type", nullptr},
         {"params", params},
         {"cut_mode", nullptr}};
  if (cot) {
    j["cot"] = cot->text;
    j["mask_payload"] = cot->mask_payload;
  }
  if (target_span) j["target_span"] = {target_span->begin, target_span->end};
  if (instruction_type) j["instruction_type"] = text::InstructionTypeName(*instruction_type);
  if (!cut_mode.empty()) j["cut_mode"] = cut_mode;
  return j;
}

EditExample EditExample::FromJson(const Json& j) {
  try {
    EditExample e;
    e.id = j.at("id").get<std::string>();
    e.task = ParseTask(j.at("task").get<std::string>());
    e.language = ParseLanguage(j.at("language").get<std::string>());
    e.source_path = j.at("source_path").get<std::string>();
    e.target_path = j.at("target_path").get<std::string>();
    e.instruction = j.at("instruction").get<std::string>();
    if (!j.at("cot").is_null()) {
      e.cot = text::CotText{j["cot"].get<std::string>(),
                            j.at("mask_payload").get<std::string>()};
    }
    const auto& span = j.at("edit_span_frames");
    e.edit_span_frames = {span.at(0).get<int>(), span.at(1).get<int>()};
    e.loss_weight = j.at("loss_weight").get<double>();
    e.target_frames = j.at("target_frames").get<int>();
    e.source_text = j.value("source_text", "");
    e.target_text = j.value("target_text", "");
    if (j.contains("target_span") && !j["target_span"].is_null()) {
      e.target_span = TokenSpan{j["target_span"].at(0).get<int>(),
                                j["target_span"].at(1).get<int>()};
    }
    if (j.contains("instruction_type") && !j["instruction_type"].is_null()) {
      e.instruction_type =
          text::ParseInstructionType(j["instruction_type"].get<std::string>());
    }
    e.params = j.value("params", Json::object());
    if (j.contains("cut_mode") && !j["cut_mode"].is_null()) {
      e.cut_mode = j["cut_mode"].get<std::string>();
    }
    if (IsSemantic(e.task) != e.cot.has_value()) {
      throw ValidationError("semantic rows need a CoT and acoustic rows must not have one");
    }
    return e;
  } catch (const Json::exception& ex) {
    throw FormatError(std::string("bad edit-set row: ") + ex.what());
  }
}

TaskWeights DefaultTaskWeights(bool with_noise) {
  TaskWeights w;
  for (TaskKind t : {TaskKind::kDeletion, TaskKind::kInsertion, TaskKind::kSubstitution,
                     TaskKind::kSpeed, TaskKind::kPitch, TaskKind::kVolume}) {
    w[t] = 1.0;
  }
  if (with_noise) {
    w[TaskKind::kDenoise] = 1.0;
    w[TaskKind::kAddSound] = 1.0;
  }
  return w;
}

TaskWeights ParseTaskWeights(const std::string& spec) {
  TaskWeights w;
  std::stringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      throw ConfigError("task weight '" + item + "' is not name:weight");
    }
    double value = 0;
    try {
      value = std::stod(item.substr(colon + 1));
    } catch (const std::exception&) {
      throw ConfigError("bad weight in '" + item + "'");
    }
    if (!(value >= 0)) throw ConfigError("negative weight in '" + item + "'");
    w[ParseTask(item.substr(0, colon))] = value;
  }
  if (w.empty()) throw ConfigError("empty task distribution");
  return w;
}

TokenTimes EstimateTokenTimes(const ManifestEntry& entry, std::size_t token_count,
                              long num_samples, int sample_rate) {
  TokenTimes t;
  const long f = dsp::kFrameSamples;
  if (entry.extra.contains("alignment")) {
    const auto& a = entry.extra["alignment"];
    if (!a.is_array() || a.size() != token_count) {
      throw ValidationError("alignment must list one [start, end] per token (" +
                            std::to_string(token_count) + ")");
    }
    for (const auto& span : a) {
      const auto s = std::lround(span.at(0).get<double>() * sample_rate);
      const auto e = std::lround(span.at(1).get<double>() * sample_rate);
      if (s < 0 || e < s || e > num_samples) {
        throw ValidationError("alignment span outside the audio");
      }
      t.begin.push_back(s);
      t.end.push_back(e);
    }
    t.mode = "alignment";
    return t;
  }
  const auto snap = [&](std::size_t k) {
    const double pos = static_cast<double>(k) * num_samples / token_count;
    return std::min(num_samples, std::lround(pos / f) * f);
  };
  for (std::size_t k = 0; k < token_count; ++k) {
    t.begin.push_back(snap(k));
    t.end.push_back(snap(k + 1));
  }
  t.mode = "proportional";
  return t;
}

EditsetItem BuildEditExample(const ManifestEntry& entry, const Waveform& audio,
                             const std::vector<const ManifestEntry*>& donors,
                             const fs::path& audio_root,
                             const std::vector<Waveform>& noise_pool,
                             const EditsetConfig& config) {
  Rng rng(DeriveSeed(config.seed, entry.id));
  const TaskKind task = DrawTask(config.tasks, rng);
  const Language lang = entry.language;
  const Tokens tokens = text::TokenizeTranscript(entry.transcript, lang);
  const std::string transcript = text::JoinTokens(tokens, lang);

  EditsetItem item;
  EditExample& ex = item.example;
  ex.id = entry.id;
  ex.task = task;
  ex.language = lang;
  const std::string stem = FileStem(entry.id);
  ex.source_path = "audio/" + stem + ".source.wav";
  ex.target_path = "audio/" + stem + ".target.wav";

  AudioPair pair;
  if (IsSemantic(task)) {
    if (tokens.empty()) throw ResolutionError("transcript is empty");
    const bool want_content = rng.Bernoulli(0.5);
    const TokenTimes times = EstimateTokenTimes(
        entry, tokens.size(), static_cast<long>(audio.samples.size()), audio.sample_rate);
    SemanticPlan plan;
    if (task == TaskKind::kInsertion) {
      plan = PlanInsertion(tokens, times, audio, lang, want_content, rng);
    } else if (task == TaskKind::kSubstitution) {
      plan = PlanSubstitution(tokens, times, audio, lang, want_content, rng);
    } else {
      const ManifestEntry* donor = &entry;
      if (!donors.empty()) {
        donor = donors[rng.UniformInt(0, static_cast<int64_t>(donors.size()) - 1)];
      }
      const Waveform donor_audio =
          donor == &entry ? audio
                          : audio::ReadWav(Resolve(audio_root, donor->audio_path).string());
      const Tokens donor_tokens = text::TokenizeTranscript(donor->transcript, lang);
      const TokenTimes donor_times =
          EstimateTokenTimes(*donor, donor_tokens.size(),
                             static_cast<long>(donor_audio.samples.size()),
                             donor_audio.sample_rate);
      plan = PlanDeletion(tokens, times, audio, donor_tokens, donor_times,
                          donor_audio, lang, want_content, rng);
      ex.params["donor_id"] = donor->id;
    }
    pair = std::move(plan.pair);
    const auto& res = plan.edit.result;
    ex.instruction = plan.edit.instruction_text;
    ex.instruction_type = plan.edit.instruction.type();
    ex.source_text = text::JoinTokens(res.source_tokens, lang);
    ex.target_text = res.edited_text;
    ex.target_span = res.span.target;
    ex.cot = text::MakeCot(res.edited_text, res.span.target, lang);
    ex.cut_mode = times.mode;
    ex.loss_weight = config.edit_weight;
  } else {
    ex.source_text = transcript;
    ex.target_text = transcript;
    switch (task) {
      case TaskKind::kDenoise: {
        const double snr = SampleDenoiseSnr(rng);
        pair = ConstructDenoisePair(audio, noise_pool, snr, rng);
        ex.instruction = DenoiseInstruction();
        ex.params["snr_db"] = snr;
        break;
      }
      case TaskKind::kAddSound: {
        const double snr = rng.Uniform(kAddSoundSnrMinDb, kAddSoundSnrMaxDb);
        pair = ConstructAddSoundPair(audio, noise_pool, snr, rng);
        ex.instruction = AddSoundInstruction();
        ex.params["snr_db"] = snr;
        break;
      }
      case TaskKind::kSpeed: {
        const double rate = PickFrom(kSpeedRates, rng);
        pair = ConstructSpeedPair(audio, rate);
        ex.instruction = SpeedInstruction(rate);
        ex.params["rate"] = rate;
        break;
      }
      case TaskKind::kPitch: {
        const double steps = PickFrom(kPitchSteps, rng);
        pair = ConstructPitchPair(audio, steps);
        ex.instruction = PitchInstruction(steps);
        ex.params["steps"] = steps;
        break;
      }
      case TaskKind::kVolume: {
        const double factor = PickFrom(kVolumeFactors, rng);
        pair = ConstructVolumePair(audio, factor);
        ex.instruction = VolumeInstruction(factor);
        ex.params["factor"] = factor;
        break;
      }
      default:
        throw ConfigError("no pair constructor for task '" + TaskName(task) + "'");
    }
    ex.loss_weight = 1.0;
  }
  ex.edit_span_frames = pair.edit_span_frames;
  ex.target_frames = FrameCount(pair.target);
  item.source = std::move(pair.input);
  item.target = std::move(pair.target);
  return item;
}

std::vector<Waveform> LoadNoiseDir(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".wav") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<Waveform> pool;
  for (const auto& f : files) pool.push_back(audio::ReadWav(f.string()));
  return pool;
}

EditsetSummary BuildEditset(const fs::path& manifest_path,
                            const std::vector<Waveform>& noise_pool,
                            const fs::path& out_dir, const EditsetConfig& config) {
  for (const auto& [task, w] : config.tasks) {
    if (w > 0 && (task == TaskKind::kDialect || task == TaskKind::kEmotion)) {
      throw ConfigError("task '" + TaskName(task) + "' has no pair constructor");
    }
    if (w > 0 && noise_pool.empty() &&
        (task == TaskKind::kDenoise || task == TaskKind::kAddSound)) {
      throw ConfigError("task '" + TaskName(task) + "' needs a noise directory");
    }
  }
  const auto entries = audio::LoadManifest(manifest_path.string());
  const fs::path root = manifest_path.parent_path();
  std::map<Language, std::vector<const ManifestEntry*>> by_lang;
  for (const auto& e : entries) by_lang[e.language].push_back(&e);
  for (auto& [lang, list] : by_lang) {
    std::sort(list.begin(), list.end(), [](auto* a, auto* b) { return a->id < b->id; });
  }
  fs::create_directories(out_dir / "audio");

  std::vector<std::optional<EditExample>> made(entries.size());
  std::vector<std::string> reasons(entries.size());
  ParallelFor(entries.size(), config.jobs, [&](std::size_t i) {
    const auto& entry = entries[i];
    try {
      const Waveform audio = audio::ReadWav(Resolve(root, entry.audio_path).string());
      std::vector<const ManifestEntry*> donors;
      for (const auto* d : by_lang[entry.language]) {
        if (d != &entry) donors.push_back(d);
      }
      auto item = BuildEditExample(entry, audio, donors, root, noise_pool, config);
      audio::WriteWav(item.source, (out_dir / item.example.source_path).string());
      audio::WriteWav(item.target, (out_dir / item.example.target_path).string());
      made[i] = std::move(item.example);
    } catch (const ResolutionError& e) {
      reasons[i] = e.what();
    } catch (const std::exception& e) {
      throw Error("item " + entry.id + ": " + e.what());
    }
  });

  EditsetSummary summary;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (made[i]) {
      summary.examples.push_back(std::move(*made[i]));
    } else {
      summary.skipped.emplace_back(entries[i].id, reasons[i]);
    }
  }
  std::sort(summary.examples.begin(), summary.examples.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
  std::sort(summary.skipped.begin(), summary.skipped.end());

  std::vector<Json> rows, skipped;
  for (const auto& ex : summary.examples) rows.push_back(ex.ToJson());
  for (const auto& [id, reason] : summary.skipped) {
    skipped.push_back({{"id", id}, {"reason", reason}});
  }
  audio::WriteJsonLines(rows, (out_dir / "editset.jsonl").string());
  audio::WriteJsonLines(skipped, (out_dir / "skipped.jsonl").string());
  return summary;
}

}  // namespace uniedit::forge
