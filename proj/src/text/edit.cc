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

#include "uniedit/text/edit.h"

#include <cctype>
#include <span>
#include <variant>

#include "uniedit/common/error.h"
#include "uniedit/text/tokenize.h"

namespace uniedit::text {
namespace {

using Tokens = std::vector<std::string>;

std::vector<int> FindAll(const Tokens& hay, const Tokens& needle,
                         bool normalized) {
  std::vector<int> hits;
  if (needle.empty() || needle.size() > hay.size()) return hits;
  const auto key = [normalized](const std::string& t) {
    return normalized ? NormalizeToken(t) : t;
  };
  Tokens h, n;
  for (const auto& t : hay) h.push_back(key(t));
  for (const auto& t : needle) n.push_back(key(t));
  for (std::size_t i = 0; i + n.size() <= h.size(); ++i) {
    if (std::equal(n.begin(), n.end(), h.begin() + i)) {
      hits.push_back(static_cast<int>(i));
    }
  }
  return hits;
}

std::string ListPositions(const std::vector<int>& hits) {
  std::string out;
  for (std::size_t i = 0; i < hits.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(hits[i] + 1);
  }
  return out;
}

TokenSpan ResolveAnchor(const Tokens& tokens, const std::string& anchor,
                        Language language, AnchorPolicy policy) {
  const Tokens needle = TokenizeTranscript(anchor, language);
  if (needle.empty()) throw ResolutionError("content anchor is blank");
  std::vector<int> hits = FindAll(tokens, needle, false);
  if (hits.empty()) hits = FindAll(tokens, needle, true);
  if (hits.empty()) {
    throw ResolutionError("anchor '" + anchor + "' not found in transcript");
  }
  int start = hits.front();
  if (hits.size() > 1) {
    switch (policy) {
      case AnchorPolicy::kUnique:
        throw AmbiguityError("anchor '" + anchor + "' matches at token positions " +
                             ListPositions(hits));
      case AnchorPolicy::kFirst:
        break;
      case AnchorPolicy::kLast:
        start = hits.back();
        break;
    }
  }
  return {start, start + static_cast<int>(needle.size())};
}

bool IsAsciiUpper(char c) { return c >= 'A' && c <= 'Z'; }

bool StartsSentenceCase(const std::string& word) {
  if (word.empty() || !IsAsciiUpper(word[0])) return false;
  if (word == "I" || word.rfind("I'", 0) == 0) return false;
  int letters = 0, upper = 0;
  for (char c : word) {
    if (std::isalpha(static_cast<unsigned char>(c))) {
      ++letters;
      upper += IsAsciiUpper(c);
    }
  }
  return !(letters > 1 && upper == letters);
}

}  // namespace

TokenSpan ResolveSourceSpan(const Tokens& tokens,
                            const EditInstruction& ins, Language language,
                            AnchorPolicy policy) {
  ValidateInstruction(ins);
  const int n = static_cast<int>(tokens.size());
  if (ins.relation == Relation::kAtStart) return {0, 0};
  if (ins.relation == Relation::kAtEnd) return {n, n};

  TokenSpan span;
  if (const auto* r = std::get_if<IndexRange>(&ins.locator)) {
    if (r->end > n) {
      throw BoundsError("index " + std::to_string(r->end) +
                        " beyond transcript of " + std::to_string(n) + " tokens");
    }
    span = {r->start - 1, r->end};
  } else if (const auto* e = std::get_if<EdgeSpan>(&ins.locator)) {
    if (e->count > n) {
      throw BoundsError("edge span of " + std::to_string(e->count) +
                        " tokens exceeds transcript of " + std::to_string(n));
    }
    span = e->from_end ? TokenSpan{n - e->count, n} : TokenSpan{0, e->count};
  } else {
    span = ResolveAnchor(tokens, std::get<ContentAnchor>(ins.locator).text,
                         language, policy);
  }
  if (ins.relation == Relation::kAfter) return {span.end, span.end};
  if (ins.relation == Relation::kBefore) return {span.begin, span.begin};
  return span;
}

EditResult ApplyEdit(std::string_view transcript, const EditInstruction& ins,
                     Language language, const EditOptions& options) {
  EditResult result;
  result.source_tokens = TokenizeTranscript(transcript, language);
  const Tokens& src = result.source_tokens;
  const TokenSpan source =
      ResolveSourceSpan(src, ins, language, options.anchor_policy);

  Tokens payload = TokenizeTranscript(ins.payload, language);
  if (ins.kind != EditKind::kDeletion && payload.empty()) {
    throw ValidationError("payload has no tokens");
  }
  Tokens tail(src.begin() + source.end, src.end());
  if (language == Language::kEn && options.sentence_case_on_prepend &&
      ins.kind == EditKind::kInsertion && source.begin == 0 && !tail.empty() &&
      IsAsciiUpper(tail.front()[0])) {
    if (StartsSentenceCase(tail.front())) {
      tail.front()[0] = static_cast<char>(std::tolower(tail.front()[0]));
    }
    auto& first = payload.front()[0];
    first = static_cast<char>(std::toupper(static_cast<unsigned char>(first)));
  }

  Tokens& out = result.tokens;
  out.assign(src.begin(), src.begin() + source.begin);
  out.insert(out.end(), payload.begin(), payload.end());
  out.insert(out.end(), tail.begin(), tail.end());

  const int target_end = source.begin + static_cast<int>(payload.size());
  result.span = {source, {source.begin, target_end}};
  result.edited_text = JoinTokens(out, language);
  result.mask_payload = JoinTokens(payload, language);
  return result;
}

}  // namespace uniedit::text
