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

#include "uniedit/audio/manifest.h"

#include <fstream>
#include <unordered_set>

#include "uniedit/common/error.h"

namespace uniedit::audio {
namespace {

std::string RequireString(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) {
    throw ValidationError(std::string("missing field '") + key + "'");
  }
  if (!it->is_string()) {
    throw ValidationError(std::string("field '") + key + "' must be a string");
  }
  return it->get<std::string>();
}

}  // namespace

Json ManifestEntry::ToJson() const {
  Json j = extra.is_object() ? extra : Json::object();
  j["id"] = id;
  j["audio_path"] = audio_path;
  j["transcript"] = transcript;
  j["language"] = LanguageCode(language);
  return j;
}

ManifestEntry ManifestEntry::FromJson(const Json& j) {
  if (!j.is_object()) throw ValidationError("manifest line is not an object");
  ManifestEntry e;
  e.id = RequireString(j, "id");
  e.audio_path = RequireString(j, "audio_path");
  e.transcript = RequireString(j, "transcript");
  e.language = ParseLanguage(RequireString(j, "language"));
  e.extra = j;
  for (const char* key : {"id", "audio_path", "transcript", "language"}) {
    e.extra.erase(key);
  }
  return e;
}

std::vector<Json> ReadJsonLines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::vector<Json> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      rows.push_back(Json::parse(line));
    } catch (const Json::exception& e) {
      throw FormatError(path + ":" + std::to_string(line_no) +
                        ": malformed JSON: " + e.what());
    }
    if (!rows.back().is_object()) {
      throw FormatError(path + ":" + std::to_string(line_no) +
                        ": expected a JSON object");
    }
  }
  return rows;
}

std::string DumpJsonLines(const std::vector<Json>& rows) {
  std::string out;
  for (const auto& row : rows) {
    out += row.dump();
    out += '\n';
  }
  return out;
}

void WriteJsonLines(const std::vector<Json>& rows, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << DumpJsonLines(rows);
  if (!out) throw IoError("write failed for " + path);
}

void CheckUniqueIds(const std::vector<ManifestEntry>& entries) {
  std::unordered_set<std::string> seen;
  for (const auto& e : entries) {
    if (!seen.insert(e.id).second) {
      throw ValidationError("duplicate id '" + e.id + "' in manifest");
    }
  }
}

std::vector<ManifestEntry> LoadManifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::vector<ManifestEntry> entries;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = path + ":" + std::to_string(line_no);
    Json j;
    try {
      j = Json::parse(line);
    } catch (const Json::exception& e) {
      throw FormatError(where + ": malformed JSON: " + e.what());
    }
    try {
      entries.push_back(ManifestEntry::FromJson(j));
    } catch (const ValidationError& e) {
      throw FormatError(where + ": " + e.what());
    }
  }
  CheckUniqueIds(entries);
  return entries;
}

void SaveManifest(const std::vector<ManifestEntry>& entries,
                  const std::string& path) {
  CheckUniqueIds(entries);
  std::vector<Json> rows;
  rows.reserve(entries.size());
  for (const auto& e : entries) rows.push_back(e.ToJson());
  WriteJsonLines(rows, path);
}

}  // namespace uniedit::audio
