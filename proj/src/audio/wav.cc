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

#include "uniedit/audio/wav.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>

#include "uniedit/common/error.h"

namespace uniedit::audio {
namespace {

uint32_t ReadU32(const unsigned char* p) {
  return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
         (static_cast<uint32_t>(p[2]) << 16) |
         (static_cast<uint32_t>(p[3]) << 24);
}

uint16_t ReadU16(const unsigned char* p) {
  return static_cast<uint16_t>(p[0] | (p[1] << 8));
}

void PutU32(std::vector<unsigned char>& out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back((v >> (8 * i)) & 0xff);
}

void PutU16(std::vector<unsigned char>& out, uint16_t v) {
  out.push_back(v & 0xff);
  out.push_back((v >> 8) & 0xff);
}

void PutTag(std::vector<unsigned char>& out, const char* tag) {
  out.insert(out.end(), tag, tag + 4);
}

}  // namespace

void ValidateWaveform(const Waveform& wave, bool require_unit_range) {
  if (wave.sample_rate <= 0) {
    throw ValidationError("waveform sample rate must be positive");
  }
  for (std::size_t i = 0; i < wave.samples.size(); ++i) {
    const double s = wave.samples[i];
    if (!std::isfinite(s)) {
      throw ValidationError("non-finite sample at index " + std::to_string(i));
    }
    if (require_unit_range && std::abs(s) > 1.0) {
      throw ValidationError("sample out of [-1, 1] at index " +
                            std::to_string(i));
    }
  }
}

Waveform DecodeWav(const std::vector<unsigned char>& bytes,
                   const std::string& origin,
                   std::optional<int> required_rate) {
  const auto fail = [&](const std::string& what) -> FormatError {
    return FormatError(origin + ": " + what);
  };
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw fail("not a RIFF/WAVE file");
  }

  bool have_fmt = false;
  uint16_t format_tag = 0, channels = 0, bits = 0;
  uint32_t rate = 0;
  const unsigned char* data = nullptr;
  std::size_t data_size = 0;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const unsigned char* chunk = bytes.data() + pos;
    const uint32_t size = ReadU32(chunk + 4);
    const std::size_t body = pos + 8;
    if (body + size > bytes.size()) throw fail("truncated chunk");
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (size < 16) throw fail("fmt chunk too short");
      format_tag = ReadU16(chunk + 8);
      channels = ReadU16(chunk + 10);
      rate = ReadU32(chunk + 12);
      bits = ReadU16(chunk + 22);
      have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      data = chunk + 8;
      data_size = size;
    }
    pos = body + size + (size & 1);  // chunks are word aligned
  }
  if (!have_fmt) throw fail("missing fmt chunk");
  if (data == nullptr) throw fail("missing data chunk");
  if (format_tag != 1 || bits != 16) {
    throw UnsupportedFormatError(origin + ": only PCM16 is supported (format " +
                                 std::to_string(format_tag) + ", " +
                                 std::to_string(bits) + " bits)");
  }
  if (channels != 1) {
    throw UnsupportedFormatError(origin + ": only mono is supported (" +
                                 std::to_string(channels) + " channels)");
  }
  if (rate == 0) throw fail("zero sample rate");
  if (required_rate && static_cast<int>(rate) != *required_rate) {
    throw UnsupportedFormatError(origin + ": sample rate " +
                                 std::to_string(rate) + " Hz, expected " +
                                 std::to_string(*required_rate) + " Hz");
  }
  if (data_size % 2 != 0) throw fail("odd-sized PCM16 data chunk");

  Waveform wave;
  wave.sample_rate = static_cast<int>(rate);
  wave.samples.resize(data_size / 2);
  for (std::size_t i = 0; i < wave.samples.size(); ++i) {
    const auto v = static_cast<int16_t>(ReadU16(data + 2 * i));
    wave.samples[i] = static_cast<double>(v) / 32768.0;
  }
  return wave;
}

Waveform ReadWav(const std::string& path, std::optional<int> required_rate) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  return DecodeWav(bytes, path, required_rate);
}

short QuantizeSample(double sample) {
  const double clamped = std::clamp(sample, -1.0, 1.0);
  const double scaled = std::nearbyint(clamped * 32768.0);
  return static_cast<short>(std::clamp(scaled, -32768.0, 32767.0));
}

std::vector<unsigned char> EncodeWav(const Waveform& wave) {
  ValidateWaveform(wave);
  const auto data_bytes = static_cast<uint32_t>(wave.samples.size() * 2);
  std::vector<unsigned char> out;
  out.reserve(44 + data_bytes);
  PutTag(out, "RIFF");
  PutU32(out, 36 + data_bytes);
  PutTag(out, "WAVE");
  PutTag(out, "fmt ");
  PutU32(out, 16);
  PutU16(out, 1);  // PCM
  PutU16(out, 1);  // mono
  PutU32(out, static_cast<uint32_t>(wave.sample_rate));
  PutU32(out, static_cast<uint32_t>(wave.sample_rate) * 2);
  PutU16(out, 2);
  PutU16(out, 16);
  PutTag(out, "data");
  PutU32(out, data_bytes);
  for (double s : wave.samples) {
    PutU16(out, static_cast<uint16_t>(QuantizeSample(s)));
  }
  return out;
}

void WriteWav(const Waveform& wave, const std::string& path) {
  const auto bytes = EncodeWav(wave);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed for " + path);
}

}  // namespace uniedit::audio
