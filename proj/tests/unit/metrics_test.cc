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

#include <gtest/gtest.h>

#include "support/fixtures.h"
#include "support/oracles.h"
#include "uniedit/audio/wav.h"
#include "uniedit/common/error.h"
#include "uniedit/metrics/metrics.h"
#include "uniedit/metrics/report.h"

namespace uniedit::metrics {
namespace {

Tokens Words(std::string_view s) { return ScoringTokens(s, Language::kEn); }

TEST(WerTest, HandExamples) {
  EXPECT_EQ(Wer(Words("a b c"), Words("a b c")), 0.0);
  EXPECT_DOUBLE_EQ(Wer(Words("a b c"), Words("a x c")), 1.0 / 3.0);
  EXPECT_EQ(Wer(Words("a b"), Words("")), 1.0);
  EXPECT_EQ(Wer(Words("a"), Words("x y z")), 3.0);
  EXPECT_THROW(Wer(Words(""), Words("a")), UndefinedMetricError);
}

TEST(WerTest, ScoringNormalization) {
  EXPECT_EQ(Words("Hello, World! Don't"), (Tokens{"hello", "world", "don't"}));
  EXPECT_EQ(ScoringTokens("你好，世界", Language::kZh), (Tokens{"你", "好", "世", "界"}));
  EXPECT_EQ(Wer(Words("The cat."), Words("the CAT")), 0.0);
}

TEST(WerTest, MatchesOracleOnRandomPairs) {
  Rng rng(31);
  for (int i = 0; i < 500; ++i) {
    const auto ref = uniedit::testing::RandomTokens(rng, 12, 4);
    const auto hyp = uniedit::testing::RandomTokens(rng, 12, 4);
    EXPECT_EQ(EditDistance(ref, hyp), uniedit::testing::LevenshteinOracle(ref, hyp));
    if (!ref.empty()) {
      EXPECT_DOUBLE_EQ(Wer(ref, hyp),
                       static_cast<double>(uniedit::testing::LevenshteinOracle(ref, hyp)) /
                           ref.size());
    }
  }
}

TEST(AlignTest, OpsReconstructBothSides) {
  Rng rng(32);
  for (int i = 0; i < 300; ++i) {
    const auto ref = uniedit::testing::RandomTokens(rng, 10, 3);
    const auto hyp = uniedit::testing::RandomTokens(rng, 10, 3);
    const auto a = Align(ref, hyp);
    EXPECT_EQ(a.cost(), EditDistance(ref, hyp));
    int r = 0, h = 0;
    for (const auto& op : a.ops) {
      if (op.kind != OpKind::kIns) {
        EXPECT_EQ(op.ref, r++);
      }
      if (op.kind != OpKind::kDel) {
        EXPECT_EQ(op.hyp, h++);
      }
      if (op.kind == OpKind::kMatch) {
        EXPECT_EQ(ref[op.ref], hyp[op.hyp]);
      }
      if (op.kind == OpKind::kSub) {
        EXPECT_NE(ref[op.ref], hyp[op.hyp]);
      }
    }
    EXPECT_EQ(r, static_cast<int>(ref.size()));
    EXPECT_EQ(h, static_cast<int>(hyp.size()));
  }
}

TEST(AlignTest, InsertionsChargedToPrecedingToken) {
  const auto a = Align(Words("a b"), Words("x a y b"));
  EXPECT_EQ(AttributedRefIndex(a), (std::vector<int>{-1, 0, 0, 1}));
}

TEST(NoEditWerTest, SpanErrorsAreFree) {
  const auto ref = Words("it does not publicly comment on disputes");
  EXPECT_EQ(NoEditWer(ref, Words("it does not loudly comment on disputes"), {3, 4}), 0.0);
  EXPECT_DOUBLE_EQ(NoEditWer(ref, Words("it did not publicly comment on disputes"), {3, 4}),
                   1.0 / 6.0);
  EXPECT_THROW(NoEditWer(ref, ref, {0, 7}), UndefinedMetricError);
  EXPECT_THROW(NoEditWer(ref, ref, {3, 9}), BoundsError);
}

TEST(EditAccTest, InsertionPayload) {
  const auto ref = Words("it does not publicly comment on specific disputes");
  const auto payload = Words("publicly");
  EXPECT_TRUE(EditAcc(payload, ref, Align(ref, ref), {3, 4}));
  const auto missing = Words("it does not comment on specific disputes");
  EXPECT_FALSE(EditAcc(payload, missing, Align(ref, missing), {3, 4}));
  // Errors outside the span do not affect accuracy.
  const auto other = Words("it did not publicly comment on specific disputes");
  EXPECT_TRUE(EditAcc(payload, other, Align(ref, other), {3, 4}));
}

TEST(EditAccTest, DeletionPoint) {
  const auto ref = Words("no better reason");
  EXPECT_TRUE(EditAcc({}, ref, Align(ref, ref), {0, 0}));
  const auto kept = Words("the second no better reason");
  EXPECT_FALSE(EditAcc({}, kept, Align(ref, kept), {0, 0}));
  const auto mid = Words("no x better reason");
  EXPECT_FALSE(EditAcc({}, mid, Align(ref, mid), {1, 1}));
  EXPECT_TRUE(EditAcc({}, mid, Align(ref, mid), {2, 2}));
}

TEST(SimilarityTest, Cosine) {
  const std::vector<double> a = {1, 2, 3}, neg = {-1, -2, -3}, ortho = {3, 0, -1};
  EXPECT_NEAR(CosineSim(a, a), 1.0, 1e-12);
  EXPECT_NEAR(CosineSim(a, neg), -1.0, 1e-12);
  EXPECT_NEAR(CosineSim(a, ortho), 0.0, 1e-12);
  EXPECT_THROW(CosineSim(a, std::vector<double>{1, 2}), ShapeError);
  EXPECT_THROW(CosineSim(a, std::vector<double>{0, 0, 0}), PreconditionError);
}

TEST(AcousticErrorTest, RdeRae) {
  EXPECT_NEAR(Rde(1.06, 1.0), 0.06, 1e-12);
  EXPECT_NEAR(Rde(0.94, 1.0), 0.06, 1e-12);
  EXPECT_EQ(Rae(0.75, 0.75), 0.0);
  EXPECT_THROW(Rde(1.0, 0.0), PreconditionError);
}

EvalReference Ref(const std::string& id, const std::string& task, const std::string& text) {
  EvalReference r;
  r.id = id;
  r.task = task;
  r.target_text = text;
  return r;
}

TEST(ReportTest, PerfectHypothesesScoreCleanly) {
  auto ins = Ref("a", "insertion", "It does not publicly comment");
  ins.target_span = text::TokenSpan{3, 4};
  ins.mask_payload = "publicly";
  auto del = Ref("b", "deletion", "no better reason");
  del.target_span = text::TokenSpan{0, 0};
  del.mask_payload = "";
  const std::vector<EvalReference> refs = {ins, del};
  const std::vector<Hypothesis> hyps = {{"a", ins.target_text, {}}, {"b", del.target_text, {}}};
  const auto report = Evaluate(refs, hyps, {});
  EXPECT_EQ(report["num_examples"], 2);
  EXPECT_EQ(report["tasks"]["insertion"]["wer"]["mean"], 0.0);
  EXPECT_EQ(report["tasks"]["insertion"]["acc"]["mean"], 1.0);
  EXPECT_EQ(report["tasks"]["deletion"]["acc"]["mean"], 1.0);
  EXPECT_EQ(report["tasks"]["deletion"]["no_edit_wer"]["mean"], 0.0);
  EXPECT_TRUE(report["tasks"]["insertion"]["sim"].is_null());
  EXPECT_TRUE(report.contains("definitions"));
}

TEST(ReportTest, AggregateIsMeanOfExamples) {
  const std::vector<EvalReference> refs = {Ref("a", "t", "a b"), Ref("b", "t", "a b c d")};
  const std::vector<Hypothesis> hyps = {{"a", "a x", {}}, {"b", "a b c d", {}}};
  const auto report = Evaluate(refs, hyps, {}, 2);
  EXPECT_DOUBLE_EQ(report["tasks"]["t"]["wer"]["mean"].get<double>(), 0.25);
  EXPECT_EQ(report["examples"][0]["id"], "a");
}

TEST(ReportTest, IdMismatchesAreErrors) {
  const std::vector<EvalReference> refs = {Ref("a", "t", "x")};
  EXPECT_THROW(Evaluate(refs, {}, {}), ValidationError);
  EXPECT_THROW(Evaluate(refs, {{"a", "x", {}}, {"a", "x", {}}}, {}), ValidationError);
  EXPECT_THROW(Evaluate(refs, {{"a", "x", {}}, {"b", "x", {}}}, {}), ValidationError);
  EXPECT_THROW(Evaluate({refs[0], refs[0]}, {{"a", "x", {}}}, {}), ValidationError);
}

TEST(ReportTest, EmbeddingsAndAcousticScores) {
  const auto dir = uniedit::testing::MakeTempDir("metrics_acoustic");
  const auto src = uniedit::testing::Sine(300.0, 1.0, 0.4);
  audio::Waveform fast = src;
  fast.samples.resize(src.size() * 100 / 212);
  audio::Waveform loud = src;
  for (auto& s : loud.samples) s *= 1.5;
  audio::WriteWav(src, (dir / "src.wav").string());
  audio::WriteWav(fast, (dir / "fast.wav").string());
  audio::WriteWav(loud, (dir / "loud.wav").string());

  auto speed = Ref("s", "speed", "x");
  speed.source_path = (dir / "src.wav").string();
  speed.params = {{"rate", 2.0}};
  auto volume = Ref("v", "volume", "x");
  volume.source_path = speed.source_path;
  volume.params = {{"factor", 1.5}};
  const std::vector<Hypothesis> hyps = {{"s", "x", (dir / "fast.wav").string()},
                                        {"v", "x", (dir / "loud.wav").string()}};
  EmbeddingTable emb = {{"s", {1, 0}}, {"s#source", {1, 1}}};
  const auto report = Evaluate({speed, volume}, hyps, emb);
  const auto rows = report["examples"];
  EXPECT_NEAR(rows[0]["rde"].get<double>(), std::abs(fast.duration_seconds() - 0.5) / 0.5,
              1e-9);
  EXPECT_NEAR(rows[0]["sim"].get<double>(), std::sqrt(0.5), 1e-12);
  EXPECT_LT(rows[1]["rae"].get<double>(), 1e-4);
  EXPECT_TRUE(rows[1]["sim"].is_null());
}

}  // namespace
}  // namespace uniedit::metrics
