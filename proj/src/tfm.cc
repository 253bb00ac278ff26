// cqser/src/tfm.cc

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

#include "cqser/dsp/tfm.h"

#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace cqser {

namespace {

constexpr char kMagic[4] = {'T', 'F', 'M', '1'};

template <typename T>
void PutRaw(std::ofstream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T GetRaw(std::ifstream& in, const std::string& path) {
  T v;
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw std::runtime_error("feature file " + path + ": truncated");
  return v;
}

}  // namespace

const char* TfKindName(TfKind kind) {
  switch (kind) {
    case TfKind::kMagnitude: return "magnitude";
    case TfKind::kPower: return "power";
    case TfKind::kLogPower: return "log-power";
    case TfKind::kCepstral: return "cepstral";
  }
  return "unknown";
}

bool TimeFreqMatrix::AllFinite() const {
  for (float v : values)
    if (!std::isfinite(v)) return false;
  return true;
}

void SaveTfm(const TimeFreqMatrix& m, const std::string& path) {
  if (m.bins <= 0 || m.frames <= 0 ||
      m.bin_freqs.size() != static_cast<size_t>(m.bins) ||
      m.values.size() != static_cast<size_t>(m.bins) * m.frames)
    throw std::runtime_error("feature file " + path +
                             ": inconsistent matrix shape");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw std::runtime_error("feature file " + path + ": cannot open");
  out.write(kMagic, 4);
  PutRaw<uint32_t>(out, static_cast<uint32_t>(m.kind));
  PutRaw<uint32_t>(out, static_cast<uint32_t>(m.bins));
  PutRaw<uint32_t>(out, static_cast<uint32_t>(m.frames));
  PutRaw<uint32_t>(out, static_cast<uint32_t>(m.hop));
  PutRaw<uint32_t>(out, static_cast<uint32_t>(m.sample_rate));
  out.write(reinterpret_cast<const char*>(m.bin_freqs.data()),
            static_cast<std::streamsize>(m.bin_freqs.size() * sizeof(double)));
  out.write(reinterpret_cast<const char*>(m.values.data()),
            static_cast<std::streamsize>(m.values.size() * sizeof(float)));
  if (!out) throw std::runtime_error("feature file " + path + ": write failed");
}

TimeFreqMatrix LoadTfm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("feature file " + path + ": cannot open");
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0)
    throw std::runtime_error("feature file " + path + ": bad magic");
  TimeFreqMatrix m;
  uint32_t kind = GetRaw<uint32_t>(in, path);
  if (kind > 3)
    throw std::runtime_error("feature file " + path + ": unknown kind");
  m.kind = static_cast<TfKind>(kind);
  m.bins = static_cast<int>(GetRaw<uint32_t>(in, path));
  m.frames = static_cast<int>(GetRaw<uint32_t>(in, path));
  m.hop = static_cast<int>(GetRaw<uint32_t>(in, path));
  m.sample_rate = static_cast<int>(GetRaw<uint32_t>(in, path));
  if (m.bins <= 0 || m.frames <= 0)
    throw std::runtime_error("feature file " + path + ": empty matrix");
  m.bin_freqs.resize(static_cast<size_t>(m.bins));
  in.read(reinterpret_cast<char*>(m.bin_freqs.data()),
          static_cast<std::streamsize>(m.bin_freqs.size() * sizeof(double)));
  m.values.resize(static_cast<size_t>(m.bins) * m.frames);
  in.read(reinterpret_cast<char*>(m.values.data()),
          static_cast<std::streamsize>(m.values.size() * sizeof(float)));
  if (!in) throw std::runtime_error("feature file " + path + ": truncated");
  return m;
}

void ExportTfmCsv(const TimeFreqMatrix& m, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("CSV " + path + ": cannot open");
  out << "bin_index,center_freq_hz";
  for (int t = 0; t < m.frames; ++t) out << ",frame_" << t;
  out << "\n";
  out.precision(9);
  for (int b = 0; b < m.bins; ++b) {
    out << b << "," << m.bin_freqs[static_cast<size_t>(b)];
    const float* row = m.Row(b);
    for (int t = 0; t < m.frames; ++t) out << "," << row[t];
    out << "\n";
  }
  if (!out) throw std::runtime_error("CSV " + path + ": write failed");
}

}  // namespace cqser
