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

#ifndef UNIEDIT_COMMON_LANGUAGE_H_
#define UNIEDIT_COMMON_LANGUAGE_H_

#include <string>
#include <string_view>

namespace uniedit {

enum class Language { kZh, kEn };

// "zh" / "en"; anything else throws ValidationError.
Language ParseLanguage(std::string_view code);
std::string LanguageCode(Language lang);

}  // namespace uniedit

#endif  // UNIEDIT_COMMON_LANGUAGE_H_
