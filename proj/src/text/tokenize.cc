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

#include "uniedit/text/tokenize.h"

#include <cctype>

namespace uniedit::text {
namespace {

int SequenceLength(unsigned char lead) {
  if (lead < 0x80) return 1;
  if ((lead & 0xe0) == 0xc0) return 2;
  if ((lead & 0xf0) == 0xe0) return 3;
  if ((lead & 0xf8) == 0xf0) return 4;
  return 1;
}

}  // namespace

std::vector<std::string> SplitCodePoints(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    int len = SequenceLength(static_cast<unsigned char>(text[i]));
    if (i + len > text.size()) len = 1;
    for (int k = 1; k < len; ++k) {
      if ((static_cast<unsigned char>(text[i + k]) & 0xc0) != 0x80) {
        len = 1;
        break;
      }
    }
    out.emplace_back(text.substr(i, len));
    i += len;
  }
  return out;
}

bool IsWhitespace(std::string_view cp) {
  return cp == " " || cp == "\t" || cp == "\n" || cp == "\r" ||
         cp == "\v" || cp == "\f" || cp == "　" || cp == " ";
}

bool IsPunctuation(std::string_view cp) {
  if (cp.size() == 1) {
    const unsigned char c = static_cast<unsigned char>(cp[0]);
    return c != '\'' && std::ispunct(c);
  }
  static constexpr std::string_view kCjk[] = {
      "，", "。", "！", "？", "、", "；", "：", "“", "”", "‘", "’", "（", "）",
      "《", "》", "【", "】", "…", "—", "·", "「", "」", "『", "』", "～", "﹑"};
  for (const auto p : kCjk) {
    if (cp == p) return true;
  }
  return false;
}

std::string NormalizeToken(std::string_view token) {
  std::string out;
  for (const auto& cp : SplitCodePoints(token)) {
    if (IsPunctuation(cp)) continue;
    if (cp.size() == 1) {
      out += static_cast<char>(std::tolower(static_cast<unsigned char>(cp[0])));
    } else {
      out += cp;
    }
  }
  return out;
}

std::vector<std::string> TokenizeTranscript(std::string_view text,
                                            Language language) {
  std::vector<std::string> tokens;
  if (language == Language::kZh) {
    for (auto& cp : SplitCodePoints(text)) {
      if (!IsWhitespace(cp)) tokens.push_back(std::move(cp));
    }
    return tokens;
  }
  std::string current;
  for (auto& cp : SplitCodePoints(text)) {
    if (IsWhitespace(cp)) {
      if (!current.empty()) tokens.push_back(std::move(current));
      current.clear();
    } else {
      current += cp;
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::vector<std::string> TokenizeCot(std::string_view text, Language language) {
  std::vector<std::string> tokens;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t hit = text.find(kMaskToken, pos);
    const std::size_t end = hit == std::string_view::npos ? text.size() : hit;
    for (auto& t : TokenizeTranscript(text.substr(pos, end - pos), language)) {
      tokens.push_back(std::move(t));
    }
    if (hit == std::string_view::npos) break;
    tokens.emplace_back(kMaskToken);
    pos = hit + kMaskToken.size();
  }
  return tokens;
}

std::string JoinTokens(std::span<const std::string> tokens, Language language) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0 && language == Language::kEn) out += ' ';
    out += tokens[i];
  }
  return out;
}

}  // namespace uniedit::text
