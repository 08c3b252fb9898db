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

#include "uniedit/metrics/metrics.h"

#include <algorithm>
#include <cmath>

#include "uniedit/common/error.h"
#include "uniedit/text/tokenize.h"

namespace uniedit::metrics {
namespace {

using Table = std::vector<std::vector<int>>;

Table CostTable(std::span<const std::string> ref, std::span<const std::string> hyp) {
  const std::size_t n = ref.size(), m = hyp.size();
  Table d(n + 1, std::vector<int>(m + 1));
  for (std::size_t i = 0; i <= n; ++i) d[i][0] = static_cast<int>(i);
  for (std::size_t j = 0; j <= m; ++j) d[0][j] = static_cast<int>(j);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const int diag = d[i - 1][j - 1] + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      d[i][j] = std::min({diag, d[i - 1][j] + 1, d[i][j - 1] + 1});
    }
  }
  return d;
}

void CheckSpan(TokenSpan span, std::size_t n) {
  if (span.begin < 0 || span.begin > span.end ||
      span.end > static_cast<int>(n)) {
    throw BoundsError("token span [" + std::to_string(span.begin) + ", " +
                      std::to_string(span.end) + ") outside reference of " +
                      std::to_string(n) + " tokens");
  }
}

bool Inside(int index, TokenSpan span) {
  return index >= span.begin && index < span.end;
}

}  // namespace

int Alignment::cost() const {
  return static_cast<int>(std::count_if(ops.begin(), ops.end(), [](const AlignOp& op) {
    return op.kind != OpKind::kMatch;
  }));
}

int EditDistance(std::span<const std::string> ref, std::span<const std::string> hyp) {
  return CostTable(ref, hyp)[ref.size()][hyp.size()];
}

Alignment Align(std::span<const std::string> ref, std::span<const std::string> hyp) {
  const Table d = CostTable(ref, hyp);
  Alignment a;
  int i = static_cast<int>(ref.size());
  int j = static_cast<int>(hyp.size());
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0 && ref[i - 1] == hyp[j - 1] && d[i][j] == d[i - 1][j - 1]) {
      a.ops.push_back({OpKind::kMatch, i - 1, j - 1});
      --i, --j;
    } else if (i > 0 && j > 0 && d[i][j] == d[i - 1][j - 1] + 1) {
      a.ops.push_back({OpKind::kSub, i - 1, j - 1});
      --i, --j;
    } else if (i > 0 && d[i][j] == d[i - 1][j] + 1) {
      a.ops.push_back({OpKind::kDel, i - 1, -1});
      --i;
    } else {
      a.ops.push_back({OpKind::kIns, -1, j - 1});
      --j;
    }
  }
  std::reverse(a.ops.begin(), a.ops.end());
  return a;
}

std::vector<int> AttributedRefIndex(const Alignment& alignment) {
  std::vector<int> out;
  out.reserve(alignment.ops.size());
  int last_ref = -1;
  for (const auto& op : alignment.ops) {
    if (op.kind == OpKind::kIns) {
      out.push_back(last_ref);
    } else {
      last_ref = op.ref;
      out.push_back(op.ref);
    }
  }
  return out;
}

double Wer(std::span<const std::string> ref, std::span<const std::string> hyp) {
  if (ref.empty()) throw UndefinedMetricError("WER is undefined for an empty reference");
  return static_cast<double>(EditDistance(ref, hyp)) / static_cast<double>(ref.size());
}

double NoEditWer(std::span<const std::string> ref, std::span<const std::string> hyp,
                 TokenSpan target_span) {
  CheckSpan(target_span, ref.size());
  const int outside = static_cast<int>(ref.size()) - target_span.size();
  if (outside <= 0) {
    throw UndefinedMetricError("edit span covers the whole reference");
  }
  const Alignment a = Align(ref, hyp);
  const auto owner = AttributedRefIndex(a);
  int errors = 0;
  for (std::size_t k = 0; k < a.ops.size(); ++k) {
    if (a.ops[k].kind != OpKind::kMatch && !Inside(owner[k], target_span)) ++errors;
  }
  return static_cast<double>(errors) / outside;
}

bool EditAcc(std::span<const std::string> payload, std::span<const std::string> hyp,
             const Alignment& alignment, TokenSpan target_span) {
  const auto owner = AttributedRefIndex(alignment);
  if (target_span.empty()) {
    const int before = target_span.begin - 1;
    for (std::size_t k = 0; k < alignment.ops.size(); ++k) {
      if (alignment.ops[k].kind == OpKind::kIns && owner[k] == before) return false;
    }
    return true;
  }
  Tokens charged;
  for (std::size_t k = 0; k < alignment.ops.size(); ++k) {
    const auto& op = alignment.ops[k];
    if (op.hyp >= 0 && Inside(owner[k], target_span)) {
      charged.push_back(hyp[op.hyp]);
    }
  }
  return std::equal(charged.begin(), charged.end(), payload.begin(), payload.end());
}

double CosineSim(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw ShapeError("embedding dimensions differ: " + std::to_string(a.size()) +
                     " vs " + std::to_string(b.size()));
  }
  double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (!(na > 0) || !(nb > 0)) throw PreconditionError("zero-norm embedding");
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

double Rde(double output, double target) {
  if (!(target > 0)) throw PreconditionError("target duration must be positive");
  return std::abs(output - target) / target;
}

double Rae(double output, double target) {
  if (!(target > 0)) throw PreconditionError("target amplitude must be positive");
  return std::abs(output - target) / target;
}

Tokens ScoringTokens(std::string_view text, Language language) {
  Tokens out;
  for (const auto& t : text::TokenizeTranscript(text, language)) {
    auto n = text::NormalizeToken(t);
    if (!n.empty()) out.push_back(std::move(n));
  }
  return out;
}

Tokens ScoringTokensWithSpan(const Tokens& raw, TokenSpan& span) {
  CheckSpan(span, raw.size());
  Tokens out;
  TokenSpan mapped{0, 0};
  for (int i = 0; i <= static_cast<int>(raw.size()); ++i) {
    if (i == span.begin) mapped.begin = static_cast<int>(out.size());
    if (i == span.end) mapped.end = static_cast<int>(out.size());
    if (i == static_cast<int>(raw.size())) break;
    auto n = text::NormalizeToken(raw[i]);
    if (!n.empty()) out.push_back(std::move(n));
  }
  span = mapped;
  return out;
}

}  // namespace uniedit::metrics
