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

#ifndef UNIEDIT_TESTS_SUPPORT_FIXTURES_H_
#define UNIEDIT_TESTS_SUPPORT_FIXTURES_H_

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <numbers>
#include <string>
#include <vector>

#include "uniedit/audio/manifest.h"
#include "uniedit/audio/wav.h"
#include "uniedit/common/language.h"
#include "uniedit/common/rng.h"

namespace uniedit::testing {

namespace fs = std::filesystem;

// Fresh, empty directory under the system temp dir.
inline fs::path MakeTempDir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("uniedit_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

inline std::string ReadFileBytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline audio::Waveform Sine(double freq_hz, double seconds, double amp = 0.5,
                            int rate = audio::kPipelineSampleRate) {
  audio::Waveform w;
  w.sample_rate = rate;
  const long n = std::lround(seconds * rate);
  w.samples.resize(n);
  for (long i = 0; i < n; ++i) {
    w.samples[i] = amp * std::sin(2.0 * std::numbers::pi * freq_hz * i / rate);
  }
  return w;
}

inline audio::Waveform WhiteNoise(long n, double amp, Rng& rng) {
  audio::Waveform w;
  w.samples.resize(n);
  for (auto& s : w.samples) s = amp * rng.Uniform(-1.0, 1.0);
  return w;
}

// Harmonic tone with a syllable-rate envelope, loosely speech shaped.
inline audio::Waveform SpeechLike(double seconds, Rng& rng) {
  audio::Waveform w;
  const long n = std::lround(seconds * w.sample_rate);
  w.samples.resize(n);
  const double f0 = rng.Uniform(100.0, 220.0);
  const double syl = rng.Uniform(3.0, 5.0);
  for (long i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / w.sample_rate;
    const double env = 0.5 + 0.5 * std::sin(2.0 * std::numbers::pi * syl * t);
    double v = 0.0;
    for (int h = 1; h <= 4; ++h) {
      v += std::sin(2.0 * std::numbers::pi * f0 * h * t) / h;
    }
    w.samples[i] = 0.25 * env * v + 0.005 * rng.Uniform(-1.0, 1.0);
  }
  return w;
}

inline std::string RandomEnglishSentence(Rng& rng, int min_words = 6,
                                         int max_words = 14) {
  static const std::vector<std::string> kWords = {
      "the",   "river",  "quietly", "bright",  "morning", "garden",
      "house", "people", "walked",  "toward",  "market",  "under",
      "cold",  "window", "stories", "between", "yellow",  "stone",
      "music", "slowly", "friend",  "table",   "across",  "field",
      "small", "letter", "evening", "travel",  "corner",  "winter"};
  const int n = static_cast<int>(rng.UniformInt(min_words, max_words));
  std::string s;
  for (int i = 0; i < n; ++i) {
    if (i) s += ' ';
    s += kWords[rng.UniformInt(0, static_cast<int64_t>(kWords.size()) - 1)];
  }
  return s;
}

inline std::string RandomChineseSentence(Rng& rng, int min_chars = 8,
                                         int max_chars = 20) {
  static const std::vector<std::string> kChars = {
      "我", "们", "今", "天", "去", "公", "园", "散", "步", "看", "到",
      "很", "多", "花", "开", "了", "春", "风", "吹", "过", "湖", "面",
      "孩", "子", "在", "草", "地", "上", "玩", "耍", "老", "人", "下",
      "棋", "阳", "光", "温", "暖", "心", "情", "愉", "快"};
  const int n = static_cast<int>(rng.UniformInt(min_chars, max_chars));
  std::string s;
  for (int i = 0; i < n; ++i) {
    s += kChars[rng.UniformInt(0, static_cast<int64_t>(kChars.size()) - 1)];
  }
  return s;
}

// Transcript-only entries; audio paths are placeholders.
inline std::vector<audio::ManifestEntry> TextCorpus(int n_zh, int n_en,
                                                    uint64_t seed) {
  Rng rng(seed);
  std::vector<audio::ManifestEntry> out;
  for (int i = 0; i < n_zh + n_en; ++i) {
    audio::ManifestEntry e;
    const bool zh = i < n_zh;
    char id[32];
    std::snprintf(id, sizeof(id), "%s%05d", zh ? "zh" : "en", i);
    e.id = id;
    e.audio_path = e.id + ".wav";
    e.language = zh ? Language::kZh : Language::kEn;
    e.transcript = zh ? RandomChineseSentence(rng) : RandomEnglishSentence(rng);
    out.push_back(std::move(e));
  }
  return out;
}

// Writes manifest.jsonl plus one wav per entry into dir; optionally a
// noise/ subdirectory. Returns the manifest path.
inline fs::path WriteAudioCorpus(const fs::path& dir, int n_zh, int n_en,
                                 uint64_t seed, bool with_noise = true) {
  auto entries = TextCorpus(n_zh, n_en, seed);
  Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  for (auto& e : entries) {
    const double per_token = e.language == Language::kZh ? 0.2 : 0.3;
    const std::size_t tokens =
        e.language == Language::kZh
            ? e.transcript.size() / 3
            : static_cast<std::size_t>(
                  std::count(e.transcript.begin(), e.transcript.end(), ' ') + 1);
    audio::WriteWav(SpeechLike(per_token * tokens + 0.2, rng),
                    (dir / e.audio_path).string());
  }
  const fs::path manifest = dir / "manifest.jsonl";
  audio::SaveManifest(entries, manifest.string());
  if (with_noise) {
    fs::create_directories(dir / "noise");
    for (int k = 0; k < 2; ++k) {
      audio::WriteWav(WhiteNoise(16000 + 4000 * k, 0.3, rng),
                      (dir / "noise" / ("n" + std::to_string(k) + ".wav")).string());
    }
  }
  return manifest;
}

}  // namespace uniedit::testing

#endif  // UNIEDIT_TESTS_SUPPORT_FIXTURES_H_
