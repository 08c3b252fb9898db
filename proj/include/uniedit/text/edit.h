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

#ifndef UNIEDIT_TEXT_EDIT_H_
#define UNIEDIT_TEXT_EDIT_H_

#include <string>
#include <string_view>
#include <vector>

#include "uniedit/common/language.h"
#include "uniedit/text/instruction.h"

namespace uniedit::text {

// Half-open token interval [begin, end).
struct TokenSpan {
  int begin = 0;
  int end = 0;
  int size() const { return end - begin; }
  bool empty() const { return end == begin; }
  bool operator==(const TokenSpan&) const = default;
};

struct EditSpan {
  TokenSpan source;  // in the original transcript
  TokenSpan target;  // in the edited transcript
  bool operator==(const EditSpan&) const = default;
};

// How to resolve a content anchor that occurs more than once.
enum class AnchorPolicy { kUnique, kFirst, kLast };

struct EditOptions {
  AnchorPolicy anchor_policy = AnchorPolicy::kUnique;
  // For English prepends: lowercase the old first word and capitalize the
  // payload, unless the old first word is "I" or an acronym.
  bool sentence_case_on_prepend = true;
};

struct EditResult {
  std::string edited_text;
  std::vector<std::string> source_tokens;
  std::vector<std::string> tokens;  // edited transcript tokens
  EditSpan span;
  std::string mask_payload;  // tokens of target span, joined
};

// Resolves the instruction's locator against `tokens`. For insertions the
// returned span is empty and sits at the insertion point.
TokenSpan ResolveSourceSpan(const std::vector<std::string>& tokens,
                            const EditInstruction& instruction,
                            Language language,
                            AnchorPolicy policy = AnchorPolicy::kUnique);

EditResult ApplyEdit(std::string_view transcript,
                     const EditInstruction& instruction, Language language,
                     const EditOptions& options = {});

}  // namespace uniedit::text

#endif  // UNIEDIT_TEXT_EDIT_H_
