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

#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "support/fixtures.h"
#include "uniedit/common/error.h"
#include "uniedit/dsp/effects.h"
#include "uniedit/forge/benchmark.h"
#include "uniedit/forge/editset.h"
#include "uniedit/forge/pairs.h"
#include "uniedit/text/cot.h"
#include "uniedit/text/instruction.h"

namespace uniedit::forge {
namespace {

using audio::Waveform;
using text::InstructionType;
namespace fs = std::filesystem;

Waveform Noise(long n, uint64_t seed) {
  Rng rng(seed);
  return uniedit::testing::WhiteNoise(n, 0.4, rng);
}

TEST(FramesTest, SampleToFrameArithmetic) {
  EXPECT_EQ(SamplesToFrames({0, 320}, 100), (FrameSpan{0, 1}));
  EXPECT_EQ(SamplesToFrames({100, 700}, 100), (FrameSpan{0, 3}));
  EXPECT_EQ(SamplesToFrames({640, 640}, 100), (FrameSpan{2, 2}));
  EXPECT_EQ(SamplesToFrames({3000, 3300}, 10), (FrameSpan{9, 10}));
  EXPECT_EQ(FrameCount(Noise(16000, 1)), 50);
}

TEST(PairsTest, InsertionRemovesCut) {
  const auto audio = Noise(8000, 2);
  const auto pair = ConstructInsertionPair(audio, {1000, 2500});
  EXPECT_EQ(pair.target.samples, audio.samples);
  EXPECT_EQ(pair.input.size(), audio.size() - 1500);
  EXPECT_EQ(pair.edit_span_frames, (FrameSpan{1000 / 320, (2500 + 319) / 320}));
  std::vector<double> rebuilt(pair.input.samples.begin(), pair.input.samples.begin() + 1000);
  rebuilt.insert(rebuilt.end(), audio.samples.begin() + 1000, audio.samples.begin() + 2500);
  rebuilt.insert(rebuilt.end(), pair.input.samples.begin() + 1000, pair.input.samples.end());
  EXPECT_EQ(rebuilt, audio.samples);
  EXPECT_THROW(ConstructInsertionPair(audio, {2500, 1000}), Error);
  EXPECT_THROW(ConstructInsertionPair(audio, {0, 9000}), Error);
}

TEST(PairsTest, DeletionAddsArtifact) {
  const auto audio = Noise(8000, 3);
  const auto artifact = Noise(1200, 4);
  const auto pair = ConstructDeletionPair(audio, artifact, 3000);
  EXPECT_EQ(pair.target.samples, audio.samples);
  EXPECT_EQ(pair.input.size(), audio.size() + artifact.size());
  EXPECT_EQ(pair.edit_span_frames, (FrameSpan{3000 / 320, 3000 / 320 + 1}));
  // Cutting the artifact back out inverts the deletion pair.
  const auto back = ConstructInsertionPair(pair.input, {3000, 4200});
  EXPECT_EQ(back.input.samples, audio.samples);
  EXPECT_THROW(ConstructDeletionPair(audio, artifact, 9000), BoundsError);
  EXPECT_THROW(ConstructDeletionPair(audio, Waveform{}, 10), PreconditionError);
}

TEST(PairsTest, SubstitutionOverwritesDestination) {
  const auto audio = Noise(8000, 5);
  const SampleSpan src{500, 1500}, dst{4000, 4800};
  const auto pair = ConstructSubstitutionPair(audio, src, dst);
  ASSERT_EQ(pair.input.size(), pair.target.size());
  for (long i = 0; i < 8000; ++i) {
    const bool inside = i >= dst.begin && i < dst.end;
    EXPECT_EQ(pair.input.samples[i] != pair.target.samples[i], inside) << i;
    if (inside) {
      EXPECT_EQ(pair.input.samples[i], audio.samples[src.begin + i - dst.begin]);
    }
  }
  EXPECT_THROW(ConstructSubstitutionPair(audio, {0, 1000}, {500, 1500}), ValidationError);
}

TEST(PairsTest, DenoiseHitsRequestedSnr) {
  Rng rng(6);
  const auto clean = uniedit::testing::SpeechLike(1.0, rng);
  const std::vector<Waveform> pool = {Noise(20000, 7), Noise(9000, 8)};
  Rng a(9), b(9);
  const auto pair = ConstructDenoisePair(clean, pool, 7.5, a);
  EXPECT_EQ(pair.target.samples, clean.samples);
  std::vector<double> noise(clean.size());
  for (std::size_t i = 0; i < noise.size(); ++i) {
    noise[i] = pair.input.samples[i] - clean.samples[i];
  }
  EXPECT_NEAR(10.0 * std::log10(dsp::MeanPower(clean.samples) / dsp::MeanPower(noise)),
              7.5, 0.01);
  EXPECT_EQ(ConstructDenoisePair(clean, pool, 7.5, b).input.samples, pair.input.samples);
  Rng c(1);
  for (int i = 0; i < 100; ++i) {
    const double snr = SampleDenoiseSnr(c);
    EXPECT_GE(snr, 0.0);
    EXPECT_LE(snr, 20.0);
  }
}

TEST(PairsTest, AcousticPairs) {
  const auto audio = uniedit::testing::Sine(220.0, 0.5, 0.4);
  const auto vol = ConstructVolumePair(audio, 1.5);
  EXPECT_NEAR(dsp::PeakAbs(vol.target), 1.5 * dsp::PeakAbs(vol.input), 1e-12);
  EXPECT_TRUE(vol.edit_span_frames.empty());
  EXPECT_NEAR(ConstructSpeedPair(audio, 2.0).target.duration_seconds(), 0.25, 0.02);
  EXPECT_EQ(SpeedInstruction(1.7), "adjusts the speed to 1.7");
  EXPECT_EQ(PitchInstruction(-4), "shifts the pitch by -4 steps");
  EXPECT_EQ(VolumeInstruction(0.5), "adjusts the volume to 0.5");
  EXPECT_THROW(ConstructVolumePair(audio, 0.0), ValidationError);
}

TEST(LossWeightsTest, Basics) {
  EXPECT_EQ(BuildLossWeights(5, {}), std::vector<double>(5, 1.0));
  EXPECT_EQ(BuildLossWeights(5, {0, 5}, 2.0), std::vector<double>(5, 2.0));
  const auto w = BuildLossWeights(40, {10, 18}, 3.0);
  double mean = 0.0;
  for (double v : w) mean += v / 40.0;
  EXPECT_NEAR(mean, 1.0 + (3.0 - 1.0) * 8 / 40.0, 1e-12);
  EXPECT_THROW(BuildLossWeights(5, {0, 1}, 0.5), ValidationError);
  EXPECT_THROW(BuildLossWeights(5, {3, 7}), BoundsError);
}

TEST(TasksTest, NamesRoundTrip) {
  for (TaskKind t : {TaskKind::kDeletion, TaskKind::kInsertion, TaskKind::kSubstitution,
                     TaskKind::kDenoise, TaskKind::kSpeed, TaskKind::kPitch,
                     TaskKind::kVolume, TaskKind::kAddSound}) {
    EXPECT_EQ(ParseTask(TaskName(t)), t);
  }
  EXPECT_THROW(ParseTask("karaoke"), ValidationError);
  EXPECT_EQ(DefaultTaskWeights(false).size(), 6u);
  EXPECT_EQ(DefaultTaskWeights(true).size(), 8u);
  const auto w = ParseTaskWeights("deletion:1,speed:0.5");
  EXPECT_EQ(w.at(TaskKind::kSpeed), 0.5);
  EXPECT_THROW(ParseTaskWeights("deletion"), ConfigError);
  EXPECT_THROW(ParseTaskWeights("deletion:-1"), ConfigError);
}

TEST(BenchmarkTest, CountTableTotals) {
  long zh[3] = {0, 0, 0}, en[3] = {0, 0, 0};
  for (const auto& [cell, n] : BasicBenchmarkCounts()) {
    (cell.language == Language::kZh ? zh : en)[static_cast<int>(cell.task)] += n;
  }
  EXPECT_EQ(zh[0], 170);
  EXPECT_EQ(zh[1], 170);
  EXPECT_EQ(zh[2], 159);
  EXPECT_EQ(en[0], 180);
  EXPECT_EQ(en[1], 160);
  EXPECT_EQ(en[2], 179);
  long full_zh = 0, full_en = 0;
  for (const auto& [cell, n] : FullBenchmarkCounts()) {
    (cell.language == Language::kZh ? full_zh : full_en) += n;
  }
  EXPECT_EQ(full_zh, 281 + 290 + 325);
  EXPECT_EQ(full_en, 200 + 199 + 256);
}

TEST(BenchmarkTest, CountsJsonRoundTrip) {
  const auto counts = FullBenchmarkCounts();
  EXPECT_EQ(CountsFromJson(CountsToJson(counts)), counts);
  EXPECT_EQ(CountsToJson(counts)["zh"]["deletion"]["index"], 186);
}

TEST(BenchmarkTest, SynthesizedEditsAreConsistent) {
  const auto corpus = uniedit::testing::TextCorpus(20, 20, 5);
  const PayloadPool pool(corpus);
  Rng rng(1);
  for (const auto& item : corpus) {
    for (TaskKind task : {TaskKind::kDeletion, TaskKind::kInsertion, TaskKind::kSubstitution}) {
      for (auto type : {InstructionType::kIndexBased, InstructionType::kContentBased}) {
        for (auto style : {TemplateStyle::kBasic, TemplateStyle::kFull}) {
          const auto e =
              SynthesizeEdit(item.transcript, item.language, task, type, style, pool, rng);
          const auto parsed = text::ParseInstruction(e.instruction_text);
          EXPECT_EQ(parsed, e.instruction);
          EXPECT_EQ(parsed.type(), type);
          EXPECT_NE(e.result.edited_text, item.transcript);
          EXPECT_EQ(text::ReconstructCot(e.cot, item.language), e.result.edited_text);
          if (style == TemplateStyle::kBasic) {
            EXPECT_EQ(parsed.instruction_language, Language::kEn);
          }
        }
      }
    }
  }
}

TEST(BenchmarkTest, SingleTaskDistribution) {
  const auto corpus = uniedit::testing::TextCorpus(30, 30, 6);
  BenchmarkConfig cfg;
  cfg.weights = TaskDistribution(1.0, 0.0, 0.0);
  cfg.seed = 3;
  const auto m = GenerateBenchmark(corpus, cfg);
  EXPECT_EQ(m.entries.size(), corpus.size());
  for (const auto& e : m.entries) EXPECT_EQ(e.task, TaskKind::kDeletion);
}

std::string Dump(const BenchmarkManifest& m) {
  std::string s;
  for (const auto& e : m.entries) s += e.ToJson().dump() + "\n";
  return s;
}

TEST(BenchmarkTest, DeterministicAcrossRunsAndJobs) {
  const auto corpus = uniedit::testing::TextCorpus(60, 60, 7);
  BenchmarkConfig cfg;
  cfg.weights = WeightsFromCounts(FullBenchmarkCounts());
  cfg.style = TemplateStyle::kFull;
  cfg.seed = 11;
  const std::string a = Dump(GenerateBenchmark(corpus, cfg));
  cfg.jobs = 4;
  EXPECT_EQ(Dump(GenerateBenchmark(corpus, cfg)), a);
  cfg.seed = 12;
  EXPECT_NE(Dump(GenerateBenchmark(corpus, cfg)), a);
}

TEST(BenchmarkTest, EntryJsonRoundTrip) {
  const auto corpus = uniedit::testing::TextCorpus(5, 5, 8);
  BenchmarkConfig cfg;
  cfg.weights = WeightsFromCounts(BasicBenchmarkCounts());
  for (const auto& e : GenerateBenchmark(corpus, cfg).entries) {
    const auto back = BenchmarkEntry::FromJson(e.ToJson());
    EXPECT_EQ(back.ToJson(), e.ToJson());
  }
}

TEST(BenchmarkTest, QuotaHitsBasicTable) {
  const auto corpus = uniedit::testing::TextCorpus(600, 600, 9);
  BenchmarkConfig cfg;
  cfg.mode = AssignmentMode::kQuota;
  cfg.quota = BasicBenchmarkCounts();
  cfg.seed = 1;
  const auto m = GenerateBenchmark(corpus, cfg);
  const auto report = ValidateBenchmark(m.entries, BasicBenchmarkCounts());
  EXPECT_TRUE(report.ok) << report.ToJson().dump();
  EXPECT_EQ(m.Tally(), BasicBenchmarkCounts());
}

TEST(BenchmarkTest, QuotaNeedsEnoughItems) {
  const auto corpus = uniedit::testing::TextCorpus(10, 10, 10);
  BenchmarkConfig cfg;
  cfg.mode = AssignmentMode::kQuota;
  cfg.quota = BasicBenchmarkCounts();
  EXPECT_THROW(GenerateBenchmark(corpus, cfg), PreconditionError);
}

TEST(BenchmarkTest, ProportionalFullDistributionWithinThreeSigma) {
  const auto corpus = uniedit::testing::TextCorpus(896, 655, 12);
  BenchmarkConfig cfg;
  cfg.weights = WeightsFromCounts(FullBenchmarkCounts());
  cfg.style = TemplateStyle::kFull;
  cfg.seed = 2024;
  cfg.jobs = 2;
  const auto m = GenerateBenchmark(corpus, cfg);
  ASSERT_TRUE(m.skipped.empty());
  const auto tally = m.Tally();
  std::map<Language, double> lang_total;
  for (const auto& [cell, n] : FullBenchmarkCounts()) lang_total[cell.language] += n;
  for (const auto& [cell, n] : FullBenchmarkCounts()) {
    const double items = cell.language == Language::kZh ? 896.0 : 655.0;
    const double p = n / lang_total[cell.language];
    const double sigma = std::sqrt(items * p * (1.0 - p));
    const double got = tally.count(cell) ? tally.at(cell) : 0.0;
    EXPECT_LE(std::abs(got - items * p), 3.0 * sigma) << CellName(cell);
  }
}

TEST(ValidateTest, ExactTallyAndMissingCell) {
  EXPECT_TRUE(ValidateBenchmark({}, {}).ok);
  const auto corpus = uniedit::testing::TextCorpus(600, 600, 13);
  BenchmarkConfig cfg;
  cfg.mode = AssignmentMode::kQuota;
  cfg.quota = BasicBenchmarkCounts();
  auto entries = GenerateBenchmark(corpus, cfg).entries;
  const CellKey removed = entries.back().cell();
  entries.pop_back();
  const auto report = ValidateBenchmark(entries, BasicBenchmarkCounts());
  EXPECT_FALSE(report.ok);
  ASSERT_EQ(report.mismatches.size(), 1u);
  EXPECT_EQ(report.mismatches[0].cell, removed);
  EXPECT_NE(report.ToJson().dump().find(CellName(removed)), std::string::npos);
}

TEST(ValidateTest, FlagsInconsistentEntries) {
  BenchmarkEntry e;
  e.id = "x";
  e.task = TaskKind::kInsertion;
  e.type = InstructionType::kIndexBased;
  e.instruction = "delete 'foo'";
  BenchmarkEntry garbled = e;
  garbled.id = "y";
  garbled.instruction = "nonsense";
  const auto report = ValidateBenchmark({e, garbled}, {{e.cell(), 2}});
  EXPECT_FALSE(report.ok);
  EXPECT_EQ(report.inconsistent_ids, (std::vector<std::string>{"x", "y"}));
}

TEST(EditsetTest, ProportionalTokenTimesSnapToFrames) {
  audio::ManifestEntry entry;
  const auto t = EstimateTokenTimes(entry, 4, 16000, 16000);
  EXPECT_EQ(t.mode, "proportional");
  ASSERT_EQ(t.begin.size(), 4u);
  EXPECT_EQ(t.begin[0], 0);
  EXPECT_EQ(t.end[3], 16000);
  for (std::size_t k = 0; k < 4; ++k) {
    EXPECT_EQ(t.begin[k] % 320, 0);
    if (k) {
      EXPECT_EQ(t.begin[k], t.end[k - 1]);
    }
  }
  entry.extra["alignment"] = audio::Json::array({{0.0, 0.5}, {0.5, 1.0}});
  const auto aligned = EstimateTokenTimes(entry, 2, 16000, 16000);
  EXPECT_EQ(aligned.mode, "alignment");
  EXPECT_EQ(aligned.begin[1], 8000);
  EXPECT_THROW(EstimateTokenTimes(entry, 3, 16000, 16000), ValidationError);
}

TEST(EditsetTest, BuildsConsistentExamples) {
  const auto dir = uniedit::testing::MakeTempDir("editset_build");
  const auto manifest = uniedit::testing::WriteAudioCorpus(dir, 8, 8, 21);
  const auto noise = LoadNoiseDir(dir / "noise");
  ASSERT_EQ(noise.size(), 2u);
  EditsetConfig cfg;
  cfg.seed = 4;
  cfg.tasks = DefaultTaskWeights(true);
  const auto summary = BuildEditset(manifest, noise, dir / "out", cfg);
  EXPECT_EQ(summary.examples.size() + summary.skipped.size(), 16u);
  std::set<TaskKind> seen;
  for (const auto& ex : summary.examples) {
    seen.insert(ex.task);
    const auto src = audio::ReadWav((dir / "out" / ex.source_path).string());
    const auto tgt = audio::ReadWav((dir / "out" / ex.target_path).string());
    EXPECT_EQ(ex.target_frames, FrameCount(tgt)) << ex.id;
    EXPECT_LE(ex.edit_span_frames.end, ex.target_frames) << ex.id;
    EXPECT_EQ(ex.LossWeights().size(), static_cast<std::size_t>(ex.target_frames));
    EXPECT_EQ(EditExample::FromJson(ex.ToJson()).ToJson(), ex.ToJson());
    if (IsSemantic(ex.task)) {
      ASSERT_TRUE(ex.cot.has_value());
      EXPECT_EQ(text::ReconstructCot(*ex.cot, ex.language), ex.target_text);
      EXPECT_EQ(ex.loss_weight, 2.0);
      EXPECT_FALSE(ex.edit_span_frames.empty());
      const auto parsed = text::ParseInstruction(ex.instruction);
      EXPECT_EQ(parsed.type(), ex.instruction_type.value());
    } else {
      EXPECT_FALSE(ex.cot.has_value());
      EXPECT_TRUE(ex.edit_span_frames.empty());
    }
    if (ex.task == TaskKind::kVolume) {
      EXPECT_NEAR(dsp::PeakAbs(tgt) / dsp::PeakAbs(src), ex.params["factor"].get<double>(),
                  2e-4);
    }
  }
  EXPECT_GE(seen.size(), 4u);
}

TEST(EditsetTest, NoiseTasksNeedNoise) {
  const auto dir = uniedit::testing::MakeTempDir("editset_nonoise");
  const auto manifest = uniedit::testing::WriteAudioCorpus(dir, 2, 2, 22, false);
  EditsetConfig cfg;
  cfg.tasks = {{TaskKind::kDenoise, 1.0}};
  EXPECT_THROW(BuildEditset(manifest, {}, dir / "out", cfg), ConfigError);
  cfg.tasks = {{TaskKind::kDialect, 1.0}};
  EXPECT_THROW(BuildEditset(manifest, {}, dir / "out", cfg), ConfigError);
}

TEST(EditsetTest, ByteIdenticalAcrossJobs) {
  const auto dir = uniedit::testing::MakeTempDir("editset_jobs");
  const auto manifest = uniedit::testing::WriteAudioCorpus(dir, 6, 6, 23);
  const auto noise = LoadNoiseDir(dir / "noise");
  EditsetConfig cfg;
  cfg.seed = 9;
  cfg.tasks = DefaultTaskWeights(true);
  BuildEditset(manifest, noise, dir / "a", cfg);
  cfg.jobs = 3;
  BuildEditset(manifest, noise, dir / "b", cfg);
  EXPECT_EQ(uniedit::testing::ReadFileBytes(dir / "a" / "editset.jsonl"),
            uniedit::testing::ReadFileBytes(dir / "b" / "editset.jsonl"));
  for (const auto& f : fs::directory_iterator(dir / "a" / "audio")) {
    EXPECT_EQ(uniedit::testing::ReadFileBytes(f.path()),
              uniedit::testing::ReadFileBytes(dir / "b" / "audio" / f.path().filename()))
        << f.path();
  }
}

}  // namespace
}  // namespace uniedit::forge
