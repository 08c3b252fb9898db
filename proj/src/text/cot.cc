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

#include "uniedit/text/cot.h"

#include <algorithm>
#include <vector>

#include "uniedit/common/error.h"
#include "uniedit/text/tokenize.h"

namespace uniedit::text {

CotText MakeCot(std::string_view edited_text, TokenSpan target_span,
                Language language) {
  const auto tokens = TokenizeTranscript(edited_text, language);
  const int n = static_cast<int>(tokens.size());
  if (target_span.begin < 0 || target_span.begin > target_span.end ||
      target_span.end > n) {
    throw BoundsError("target span [" + std::to_string(target_span.begin) +
                      ", " + std::to_string(target_span.end) +
                      ") outside transcript of " + std::to_string(n) +
                      " tokens");
  }
  if (std::any_of(tokens.begin(), tokens.end(),
                  [](const std::string& t) {
                    return t.find(kMaskToken) != std::string::npos;
                  })) {
    throw ValidationError("transcript already contains a mask marker");
  }
  std::vector<std::string> out(tokens.begin(), tokens.begin() + target_span.begin);
  out.emplace_back(kMaskToken);
  out.insert(out.end(), tokens.begin() + target_span.end, tokens.end());

  CotText cot;
  cot.text = JoinTokens(out, language);
  cot.mask_payload = JoinTokens(
      std::span<const std::string>(tokens).subspan(target_span.begin,
                                                   target_span.size()),
      language);
  return cot;
}

std::string ReconstructCot(const CotText& cot, Language language) {
  const auto tokens = TokenizeCot(cot.text, language);
  const auto payload = TokenizeTranscript(cot.mask_payload, language);
  std::vector<std::string> out;
  int markers = 0;
  for (const auto& t : tokens) {
    if (t == kMaskToken) {
      ++markers;
      out.insert(out.end(), payload.begin(), payload.end());
    } else {
      out.push_back(t);
    }
  }
  if (markers != 1) {
    throw ValidationError("expected exactly one mask marker, found " +
                          std::to_string(markers));
  }
  return JoinTokens(out, language);
}

}  // namespace uniedit::text
