// cqser/src/pipeline.cc

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

#include "cqser/feat/pipeline.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cqser/feat/extract.h"

namespace cqser {

TimeFreqMatrix SadFilter(const TimeFreqMatrix& m, const AudioBuffer& buf,
                         const SadConfig& cfg, int hop) {
  cfg.Validate();
  if (hop < 1) throw std::runtime_error("sad: hop must be >= 1");
  const int len = static_cast<int>(buf.samples.size());
  const int expected = len / hop + 1;
  if (m.frames != expected)
    throw std::runtime_error(
        "sad: matrix has " + std::to_string(m.frames) +
        " frames but buffer/hop imply " + std::to_string(expected));

  const int win = std::max(1, buf.sample_rate / 40);  // 25 ms
  std::vector<double> level_db(static_cast<size_t>(m.frames));
  double max_db = -1e300;
  for (int t = 0; t < m.frames; ++t) {
    const int start = t * hop - win / 2;
    const int lo = std::max(0, start);
    const int hi = std::min(len, start + win);
    double acc = 0.0;
    for (int i = lo; i < hi; ++i) {
      const double s = buf.samples[static_cast<size_t>(i)];
      acc += s * s;
    }
    const double power = acc / win;  // zero-padding semantics at the edges
    const double db = 10.0 * std::log10(power + 1e-30);
    level_db[static_cast<size_t>(t)] = db;
    max_db = std::max(max_db, db);
  }

  std::vector<int> keep;
  keep.reserve(static_cast<size_t>(m.frames));
  for (int t = 0; t < m.frames; ++t) {
    const double db = level_db[static_cast<size_t>(t)];
    if (db > max_db - cfg.margin_db && db > cfg.floor_db) keep.push_back(t);
  }
  if (keep.empty())
    throw std::runtime_error(
        "sad: every frame is below the energy threshold; utterance unusable");

  TimeFreqMatrix out;
  out.kind = m.kind;
  out.bins = m.bins;
  out.frames = static_cast<int>(keep.size());
  out.hop = m.hop;
  out.sample_rate = m.sample_rate;
  out.bin_freqs = m.bin_freqs;
  out.values.resize(static_cast<size_t>(out.bins) * out.frames);
  for (int b = 0; b < m.bins; ++b) {
    const float* src = m.Row(b);
    float* dst = out.Row(b);
    for (size_t i = 0; i < keep.size(); ++i) dst[i] = src[keep[i]];
  }
  return out;
}

TimeFreqMatrix Cmvn(const TimeFreqMatrix& m) {
  if (m.frames < 2)
    throw std::runtime_error("cmvn: need at least 2 frames, got " +
                             std::to_string(m.frames));
  TimeFreqMatrix out = m;
  for (int b = 0; b < m.bins; ++b) {
    const float* src = m.Row(b);
    double sum = 0.0;
    for (int t = 0; t < m.frames; ++t) sum += src[t];
    const double mean = sum / m.frames;
    double var = 0.0;
    for (int t = 0; t < m.frames; ++t) {
      const double d = src[t] - mean;
      var += d * d;
    }
    var /= m.frames;  // population variance
    const double inv = 1.0 / std::max(std::sqrt(var), 1e-8);
    float* dst = out.Row(b);
    for (int t = 0; t < m.frames; ++t)
      dst[t] = static_cast<float>((src[t] - mean) * inv);
  }
  return out;
}

std::vector<FeatureChunk> MakeChunks(const TimeFreqMatrix& m, int chunk_len,
                                     int label,
                                     const std::string& utterance_id) {
  if (chunk_len < 1) throw std::runtime_error("chunk: chunk_len must be >= 1");
  if (m.frames < 1) throw std::runtime_error("chunk: empty matrix");

  std::vector<FeatureChunk> chunks;
  auto emit = [&](int first, bool cyclic) {
    FeatureChunk c;
    c.bins = m.bins;
    c.chunk_len = chunk_len;
    c.label = label;
    c.utterance_id = utterance_id;
    c.values.resize(static_cast<size_t>(m.bins) * chunk_len);
    for (int b = 0; b < m.bins; ++b) {
      const float* src = m.Row(b);
      float* dst = c.values.data() + static_cast<size_t>(b) * chunk_len;
      for (int t = 0; t < chunk_len; ++t)
        dst[t] = src[cyclic ? (first + t) % m.frames : first + t];
    }
    chunks.push_back(std::move(c));
  };

  if (m.frames < chunk_len) {
    emit(0, /*cyclic=*/true);
  } else {
    for (int first = 0; first + chunk_len <= m.frames; first += chunk_len)
      emit(first, /*cyclic=*/false);
  }
  return chunks;
}

TimeFreqMatrix ExtractPipeline(const AudioBuffer& buf,
                               const FeatureConfig& cfg) {
  TimeFreqMatrix feats = ExtractFeatures(buf, cfg);
  feats = SadFilter(feats, buf, cfg.sad, cfg.Hop());
  return Cmvn(feats);
}

}  // namespace cqser
