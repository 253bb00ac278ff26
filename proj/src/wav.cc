// cqser/src/wav.cc

// Copyright 2026  CQSER Project Authors

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

#include "cqser/audio/wav.h"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace cqser {

double Rms(const AudioBuffer& buf) {
  if (buf.samples.empty()) return 0.0;
  double acc = 0.0;
  for (float s : buf.samples) acc += static_cast<double>(s) * s;
  return std::sqrt(acc / buf.samples.size());
}

namespace {

constexpr uint16_t kFormatPcm = 1;
constexpr uint16_t kFormatIeeeFloat = 3;

uint32_t ReadU32(const uint8_t* p) {
  return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
         (static_cast<uint32_t>(p[2]) << 16) |
         (static_cast<uint32_t>(p[3]) << 24);
}

uint16_t ReadU16(const uint8_t* p) {
  return static_cast<uint16_t>(p[0] | (p[1] << 8));
}

void PutU32(std::string& s, uint32_t v) {
  s.push_back(static_cast<char>(v & 0xff));
  s.push_back(static_cast<char>((v >> 8) & 0xff));
  s.push_back(static_cast<char>((v >> 16) & 0xff));
  s.push_back(static_cast<char>((v >> 24) & 0xff));
}

void PutU16(std::string& s, uint16_t v) {
  s.push_back(static_cast<char>(v & 0xff));
  s.push_back(static_cast<char>((v >> 8) & 0xff));
}

[[noreturn]] void Fail(const std::string& path, const std::string& what) {
  throw std::runtime_error("WAV " + path + ": " + what);
}

}  // namespace

AudioBuffer ReadWav(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(path, "cannot open file");
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  const uint8_t* p = reinterpret_cast<const uint8_t*>(bytes.data());
  size_t n = bytes.size();
  if (n < 12 || std::memcmp(p, "RIFF", 4) != 0 ||
      std::memcmp(p + 8, "WAVE", 4) != 0)
    Fail(path, "malformed header (not a RIFF/WAVE file)");

  uint16_t format = 0, channels = 0, bits = 0;
  uint32_t sample_rate = 0;
  bool have_fmt = false;
  const uint8_t* data = nullptr;
  uint32_t data_size = 0;

  size_t pos = 12;
  while (pos + 8 <= n) {
    const uint8_t* chunk = p + pos;
    uint32_t chunk_size = ReadU32(chunk + 4);
    size_t body = pos + 8;
    if (body + chunk_size > n) {
      // Tolerate a truncated final chunk size field only for "data".
      if (std::memcmp(chunk, "data", 4) == 0)
        chunk_size = static_cast<uint32_t>(n - body);
      else
        Fail(path, "malformed header (chunk overruns file)");
    }
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (chunk_size < 16) Fail(path, "malformed fmt chunk");
      format = ReadU16(p + body);
      channels = ReadU16(p + body + 2);
      sample_rate = ReadU32(p + body + 4);
      bits = ReadU16(p + body + 14);
      have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      data = p + body;
      data_size = chunk_size;
    }
    pos = body + chunk_size + (chunk_size & 1);  // chunks are word-aligned
  }

  if (!have_fmt) Fail(path, "missing fmt chunk");
  if (data == nullptr) Fail(path, "missing data chunk");
  if (channels < 1 || channels > 2)
    Fail(path, "unsupported channel count " + std::to_string(channels));
  if (sample_rate == 0) Fail(path, "zero sample rate");

  bool is_float;
  if (format == kFormatPcm && bits == 16) {
    is_float = false;
  } else if (format == kFormatIeeeFloat && bits == 32) {
    is_float = true;
  } else {
    Fail(path, "unsupported encoding (format " + std::to_string(format) +
                   ", " + std::to_string(bits) + " bit)");
  }

  const uint32_t bytes_per_sample = bits / 8;
  const uint32_t frame_bytes = bytes_per_sample * channels;
  const uint32_t frames = data_size / frame_bytes;
  if (frames == 0) Fail(path, "empty audio");

  AudioBuffer buf;
  buf.sample_rate = static_cast<int>(sample_rate);
  buf.samples.resize(frames);
  for (uint32_t i = 0; i < frames; ++i) {
    double acc = 0.0;
    for (uint16_t ch = 0; ch < channels; ++ch) {
      const uint8_t* sp = data + i * frame_bytes + ch * bytes_per_sample;
      if (is_float) {
        float v;
        std::memcpy(&v, sp, 4);
        acc += v;
      } else {
        int16_t v = static_cast<int16_t>(sp[0] | (sp[1] << 8));
        acc += v / 32768.0;
      }
    }
    buf.samples[i] = static_cast<float>(acc / channels);
  }
  for (float s : buf.samples)
    if (!std::isfinite(s)) Fail(path, "non-finite sample value");
  return buf;
}

namespace {

void WriteWav(const std::string& path, const AudioBuffer& buf,
              bool as_float) {
  if (buf.Empty()) throw std::runtime_error("WAV " + path + ": empty buffer");
  if (buf.sample_rate <= 0)
    throw std::runtime_error("WAV " + path + ": invalid sample rate");
  const uint16_t bits = as_float ? 32 : 16;
  const uint32_t data_size =
      static_cast<uint32_t>(buf.samples.size()) * (bits / 8);
  std::string out;
  out.reserve(44 + data_size);
  out += "RIFF";
  PutU32(out, 36 + data_size);
  out += "WAVE";
  out += "fmt ";
  PutU32(out, 16);
  PutU16(out, as_float ? kFormatIeeeFloat : kFormatPcm);
  PutU16(out, 1);  // mono
  PutU32(out, static_cast<uint32_t>(buf.sample_rate));
  PutU32(out, static_cast<uint32_t>(buf.sample_rate) * (bits / 8));
  PutU16(out, bits / 8);
  PutU16(out, bits);
  out += "data";
  PutU32(out, data_size);
  for (float s : buf.samples) {
    if (as_float) {
      uint32_t v;
      std::memcpy(&v, &s, 4);
      PutU32(out, v);
    } else {
      double scaled = std::round(static_cast<double>(s) * 32768.0);
      if (scaled > 32767.0) scaled = 32767.0;
      if (scaled < -32768.0) scaled = -32768.0;
      PutU16(out, static_cast<uint16_t>(static_cast<int16_t>(scaled)));
    }
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("WAV " + path + ": cannot open for write");
  f.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!f) throw std::runtime_error("WAV " + path + ": write failed");
}

}  // namespace

void WriteWavFloat32(const std::string& path, const AudioBuffer& buf) {
  WriteWav(path, buf, true);
}

void WriteWavInt16(const std::string& path, const AudioBuffer& buf) {
  WriteWav(path, buf, false);
}

}  // namespace cqser
