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

#ifndef UNIEDIT_AUDIO_MANIFEST_H_
#define UNIEDIT_AUDIO_MANIFEST_H_

#include <string>
#include <vector>

#include <json.hpp>

#include "uniedit/common/language.h"

namespace uniedit::audio {

using Json = nlohmann::json;

// One line of a source manifest. Fields other than the four core ones
// (instruction, alignment, ...) live in `extra` and survive a save/load.
struct ManifestEntry {
  std::string id;
  std::string audio_path;
  std::string transcript;
  Language language = Language::kEn;
  Json extra = Json::object();

  Json ToJson() const;
  static ManifestEntry FromJson(const Json& j);
};

// Reads one JSON object per line. Blank lines are skipped. A malformed line
// raises FormatError naming the file and 1-based line number.
std::vector<Json> ReadJsonLines(const std::string& path);
// One compact object per line, keys sorted, '\n' terminated.
void WriteJsonLines(const std::vector<Json>& rows, const std::string& path);
std::string DumpJsonLines(const std::vector<Json>& rows);

std::vector<ManifestEntry> LoadManifest(const std::string& path);
void SaveManifest(const std::vector<ManifestEntry>& entries,
                  const std::string& path);

// Throws ValidationError naming the first duplicated id.
void CheckUniqueIds(const std::vector<ManifestEntry>& entries);

}  // namespace uniedit::audio

#endif  // UNIEDIT_AUDIO_MANIFEST_H_
