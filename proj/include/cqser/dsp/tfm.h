// cqser/dsp/tfm.h

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

#ifndef CQSER_DSP_TFM_H_
#define CQSER_DSP_TFM_H_

#include <cstdint>
#include <string>
#include <vector>

namespace cqser {

enum class TfKind : uint32_t {
  kMagnitude = 0,
  kPower = 1,
  kLogPower = 2,
  kCepstral = 3,
};

const char* TfKindName(TfKind kind);

// A bins x frames real matrix with per-bin center frequencies. Row-major,
// row = bin. Values are stored as 32-bit floats (the on-disk payload type);
// transforms accumulate in double before narrowing.
struct TimeFreqMatrix {
  TfKind kind = TfKind::kMagnitude;
  int bins = 0;
  int frames = 0;
  int hop = 0;
  int sample_rate = 0;
  std::vector<double> bin_freqs;  // size bins; coefficient index for cepstral
  std::vector<float> values;      // size bins * frames

  float& At(int bin, int frame) {
    return values[static_cast<size_t>(bin) * frames + frame];
  }
  float At(int bin, int frame) const {
    return values[static_cast<size_t>(bin) * frames + frame];
  }
  const float* Row(int bin) const {
    return values.data() + static_cast<size_t>(bin) * frames;
  }
  float* Row(int bin) {
    return values.data() + static_cast<size_t>(bin) * frames;
  }
  double FrameRate() const {
    return hop > 0 ? static_cast<double>(sample_rate) / hop : 0.0;
  }
  bool AllFinite() const;
};

// Binary container: magic "TFM1", then u32 kind, bins, frames, hop,
// sample_rate, then bins f64 center frequencies, then bins*frames f32
// values row-major. Little-endian throughout.
void SaveTfm(const TimeFreqMatrix& m, const std::string& path);
TimeFreqMatrix LoadTfm(const std::string& path);

// CSV export for plotting: one row per bin, columns
// bin_index,center_freq_hz,v0,v1,...
void ExportTfmCsv(const TimeFreqMatrix& m, const std::string& path);

}  // namespace cqser

#endif  // CQSER_DSP_TFM_H_
