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

#ifndef UNIEDIT_TEXT_TOKENIZE_H_
#define UNIEDIT_TEXT_TOKENIZE_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "uniedit/common/language.h"

namespace uniedit::text {

inline constexpr std::string_view kMaskToken = "[MASK]";

// Splits UTF-8 text into code points (each returned as its byte string).
// Invalid sequences are passed through one byte at a time.
std::vector<std::string> SplitCodePoints(std::string_view text);

// zh: one token per character, whitespace dropped. en: whitespace-delimited
// words, punctuation stays attached.
std::vector<std::string> TokenizeTranscript(std::string_view text,
                                            Language language);

// Same as TokenizeTranscript except that "[MASK]" is always one token.
std::vector<std::string> TokenizeCot(std::string_view text, Language language);

// zh: concatenation; en: single spaces.
std::string JoinTokens(std::span<const std::string> tokens, Language language);

bool IsWhitespace(std::string_view code_point);

// ASCII or common CJK punctuation; the apostrophe is not punctuation here.
bool IsPunctuation(std::string_view code_point);

// Lowercases ASCII letters and drops punctuation code points.
std::string NormalizeToken(std::string_view token);

}  // namespace uniedit::text

#endif  // UNIEDIT_TEXT_TOKENIZE_H_
