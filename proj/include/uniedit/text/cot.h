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

#ifndef UNIEDIT_TEXT_COT_H_
#define UNIEDIT_TEXT_COT_H_

#include <string>
#include <string_view>

#include "uniedit/common/language.h"
#include "uniedit/text/edit.h"

namespace uniedit::text {

struct CotText {
  std::string text;          // edited transcript with one [MASK] marker
  std::string mask_payload;  // content hidden behind the marker
  bool operator==(const CotText&) const = default;
};

// Replaces target_span of the edited transcript by a single [MASK]. An empty
// span (deletion) places the marker at the deletion point.
CotText MakeCot(std::string_view edited_text, TokenSpan target_span,
                Language language);

// Substitutes mask_payload back into the marker position.
std::string ReconstructCot(const CotText& cot, Language language);

}  // namespace uniedit::text

#endif  // UNIEDIT_TEXT_COT_H_
