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

#include "uniedit/common/language.h"

#include "uniedit/common/error.h"

namespace uniedit {

Language ParseLanguage(std::string_view code) {
  if (code == "zh") return Language::kZh;
  if (code == "en") return Language::kEn;
  throw ValidationError("unknown language code '" + std::string(code) +
                        "' (expected zh or en)");
}

std::string LanguageCode(Language lang) {
  return lang == Language::kZh ? "zh" : "en";
}

}  // namespace uniedit
