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

#ifndef UNIEDIT_METRICS_METRICS_H_
#define UNIEDIT_METRICS_METRICS_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "uniedit/common/language.h"
#include "uniedit/text/edit.h"

namespace uniedit::metrics {

using Tokens = std::vector<std::string>;
using text::TokenSpan;

enum class OpKind { kMatch, kSub, kDel, kIns };

// ref is -1 for insertions, hyp is -1 for deletions.
struct AlignOp {
  OpKind kind = OpKind::kMatch;
  int ref = -1;
  int hyp = -1;
  bool operator==(const AlignOp&) const = default;
};

struct Alignment {
  std::vector<AlignOp> ops;
  int cost() const;  // number of non-match ops
};

int EditDistance(std::span<const std::string> ref, std::span<const std::string> hyp);

// A minimum-cost alignment. Where several exist, the backtrace from the end
// prefers match, then substitution, then deletion, then insertion.
Alignment Align(std::span<const std::string> ref, std::span<const std::string> hyp);

// Reference index an op is charged to; insertions take the preceding
// reference index (-1 before the first reference token).
std::vector<int> AttributedRefIndex(const Alignment& alignment);

// Throws UndefinedMetricError for an empty reference.
double Wer(std::span<const std::string> ref, std::span<const std::string> hyp);

// WER over reference tokens outside `target_span`. Throws BoundsError for a
// span outside the reference and UndefinedMetricError when nothing is left.
double NoEditWer(std::span<const std::string> ref, std::span<const std::string> hyp,
                 TokenSpan target_span);

// For a non-empty span: the hypothesis tokens charged to the span equal the
// payload exactly. For an empty span at p (deletion): nothing is charged
// between reference tokens p-1 and p.
bool EditAcc(std::span<const std::string> payload,
             std::span<const std::string> hyp, const Alignment& alignment,
             TokenSpan target_span);

double CosineSim(std::span<const double> a, std::span<const double> b);

// |output - target| / target; target > 0.
double Rde(double output_duration_s, double target_duration_s);
double Rae(double output_amplitude, double target_amplitude);

// Scoring tokens: zh characters, en lowercased words, punctuation removed.
Tokens ScoringTokens(std::string_view text, Language language);

// Scoring tokens of a transcript given as raw tokens, with `span` remapped
// onto the surviving tokens.
Tokens ScoringTokensWithSpan(const Tokens& raw, TokenSpan& span);

}  // namespace uniedit::metrics

#endif  // UNIEDIT_METRICS_METRICS_H_
