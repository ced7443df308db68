// csasr/wav.cc

// Copyright 2026  CSASR Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "csasr/wav.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "csasr/common.h"

namespace csasr {

namespace {

void PutU16(std::string* out, uint16_t v) {
  out->push_back(static_cast<char>(v & 0xFF));
  out->push_back(static_cast<char>((v >> 8) & 0xFF));
}

void PutU32(std::string* out, uint32_t v) {
  for (int i = 0; i < 4; ++i) {
    out->push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
  }
}

uint16_t GetU16(const unsigned char* p) {
  return static_cast<uint16_t>(p[0] | (p[1] << 8));
}

uint32_t GetU32(const unsigned char* p) {
  return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
         (static_cast<uint32_t>(p[2]) << 16) |
         (static_cast<uint32_t>(p[3]) << 24);
}

}  // namespace

AudioBuffer LoadWav(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open wav file '" + path + "'");
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  const unsigned char* p = reinterpret_cast<const unsigned char*>(bytes.data());
  auto malformed = [&](const char* what) -> void {
    throw std::invalid_argument("wav file '" + path + "': " + what);
  };
  if (bytes.size() < 44 || std::memcmp(p, "RIFF", 4) != 0 ||
      std::memcmp(p + 8, "WAVE", 4) != 0) {
    malformed("not a RIFF/WAVE file");
  }

  AudioBuffer audio;
  uint16_t channels = 0, bits = 0, format = 0;
  bool have_fmt = false, have_data = false;
  size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    uint32_t chunk_size = GetU32(p + pos + 4);
    const unsigned char* chunk = p + pos + 8;
    if (pos + 8 + chunk_size > bytes.size()) malformed("truncated chunk");
    if (std::memcmp(p + pos, "fmt ", 4) == 0) {
      if (chunk_size < 16) malformed("short fmt chunk");
      format = GetU16(chunk);
      channels = GetU16(chunk + 2);
      audio.sample_rate_hz = static_cast<int>(GetU32(chunk + 4));
      bits = GetU16(chunk + 14);
      have_fmt = true;
    } else if (std::memcmp(p + pos, "data", 4) == 0) {
      if (!have_fmt) malformed("data chunk before fmt");
      if (format != 1) malformed("only PCM (format 1) is supported");
      if (channels != 1) malformed("only mono is supported");
      if (bits != 16) malformed("only 16-bit samples are supported");
      size_t n = chunk_size / 2;
      audio.samples.resize(n);
      for (size_t i = 0; i < n; ++i) {
        int16_t s = static_cast<int16_t>(GetU16(chunk + 2 * i));
        audio.samples[i] = static_cast<float>(s) / 32768.0f;
      }
      have_data = true;
    }
    pos += 8 + chunk_size + (chunk_size & 1);  // chunks are 2-byte aligned
  }
  if (!have_data) malformed("missing data chunk");
  return audio;
}

void SaveWav(const AudioBuffer& audio, const std::string& path) {
  if (audio.sample_rate_hz <= 0) {
    throw std::invalid_argument("wav: sample rate must be positive");
  }
  std::string out;
  uint32_t data_bytes = static_cast<uint32_t>(audio.samples.size() * 2);
  out.reserve(44 + data_bytes);
  out += "RIFF";
  PutU32(&out, 36 + data_bytes);
  out += "WAVEfmt ";
  PutU32(&out, 16);
  PutU16(&out, 1);  // PCM
  PutU16(&out, 1);  // mono
  PutU32(&out, static_cast<uint32_t>(audio.sample_rate_hz));
  PutU32(&out, static_cast<uint32_t>(audio.sample_rate_hz * 2));
  PutU16(&out, 2);   // block align
  PutU16(&out, 16);  // bits per sample
  out += "data";
  PutU32(&out, data_bytes);
  for (float sample : audio.samples) {
    float clamped = std::clamp(sample, -1.0f, 1.0f);
    int value = static_cast<int>(std::lround(clamped * 32767.0f));
    PutU16(&out, static_cast<uint16_t>(static_cast<int16_t>(value)));
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot write wav file '" + path + "'");
  file.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!file) throw IoError("failed writing wav file '" + path + "'");
}

}  // namespace csasr
