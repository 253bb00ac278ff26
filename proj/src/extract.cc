// cqser/src/extract.cc

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

#include "cqser/feat/extract.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cqser/dsp/dct.h"
#include "cqser/dsp/fft.h"

namespace cqser {

const char* FeatureKindName(FeatureKind kind) {
  switch (kind) {
    case FeatureKind::kCqt: return "cqt";
    case FeatureKind::kCqcc: return "cqcc";
    case FeatureKind::kMfsc: return "mfsc";
    case FeatureKind::kMfcc: return "mfcc";
  }
  return "unknown";
}

FeatureKind ParseFeatureKind(const std::string& name) {
  if (name == "cqt") return FeatureKind::kCqt;
  if (name == "cqcc") return FeatureKind::kCqcc;
  if (name == "mfsc") return FeatureKind::kMfsc;
  if (name == "mfcc") return FeatureKind::kMfcc;
  throw std::runtime_error("unknown feature kind `" + name +
                           "` (expected cqt, cqcc, mfsc or mfcc)");
}

void SadConfig::Validate() const {
  if (!(margin_db > 0.0))
    throw std::runtime_error("sad: margin_db must be positive");
}

void FeatureConfig::Validate() const {
  sad.Validate();
  if (chunk_len < 1) throw std::runtime_error("feature: chunk_len must be >= 1");
  if (!(log_floor > 0.0))
    throw std::runtime_error("feature: log_floor must be positive");
  if (UsesCqt())
    cqt.Validate();
  else
    mel.Validate();
  if (IsCepstral() && n_ceps < 0)
    throw std::runtime_error("feature: n_ceps must be >= 0");
}

TimeFreqMatrix LogCompress(const TimeFreqMatrix& m, double eps) {
  if (m.kind != TfKind::kMagnitude && m.kind != TfKind::kPower)
    throw std::runtime_error(
        std::string("log_compress: expected magnitude or power input, got ") +
        TfKindName(m.kind));
  TimeFreqMatrix out = m;
  out.kind = TfKind::kLogPower;
  const bool square = m.kind == TfKind::kMagnitude;
  for (size_t i = 0; i < out.values.size(); ++i) {
    const double v = m.values[i];
    out.values[i] =
        static_cast<float>(std::log((square ? v * v : v) + eps));
  }
  return out;
}

TimeFreqMatrix CqccFromLogCqt(const TimeFreqMatrix& log_cqt, int n_ceps) {
  if (log_cqt.kind != TfKind::kLogPower)
    throw std::runtime_error("cqcc: expected a log-power CQT matrix");
  const int bins = log_cqt.bins;
  if (bins < 2)
    throw std::runtime_error("cqcc: need at least 2 CQT bins, got " +
                             std::to_string(bins));
  if (n_ceps <= 0) n_ceps = bins;
  if (n_ceps > bins)
    throw std::runtime_error("cqcc: n_ceps exceeds CQT bin count");

  // Precompute the interpolation stencil from the geometric axis onto the
  // uniform grid spanning [f_0, f_last] with the same point count.
  const double f0 = log_cqt.bin_freqs.front();
  const double f1 = log_cqt.bin_freqs.back();
  std::vector<int> left(static_cast<size_t>(bins));
  std::vector<double> frac(static_cast<size_t>(bins));
  for (int i = 0; i < bins; ++i) {
    const double u = f0 + (f1 - f0) * i / (bins - 1);
    int j = static_cast<int>(std::upper_bound(log_cqt.bin_freqs.begin(),
                                              log_cqt.bin_freqs.end(), u) -
                             log_cqt.bin_freqs.begin()) -
            1;
    j = std::clamp(j, 0, bins - 2);
    left[static_cast<size_t>(i)] = j;
    frac[static_cast<size_t>(i)] =
        (u - log_cqt.bin_freqs[static_cast<size_t>(j)]) /
        (log_cqt.bin_freqs[static_cast<size_t>(j + 1)] -
         log_cqt.bin_freqs[static_cast<size_t>(j)]);
  }

  DctPlan plan(bins, n_ceps);
  TimeFreqMatrix out;
  out.kind = TfKind::kCepstral;
  out.bins = n_ceps;
  out.frames = log_cqt.frames;
  out.hop = log_cqt.hop;
  out.sample_rate = log_cqt.sample_rate;
  out.bin_freqs.resize(static_cast<size_t>(n_ceps));
  for (int i = 0; i < n_ceps; ++i) out.bin_freqs[static_cast<size_t>(i)] = i;
  out.values.resize(static_cast<size_t>(n_ceps) * out.frames);

  std::vector<double> col(static_cast<size_t>(bins));
  for (int t = 0; t < log_cqt.frames; ++t) {
    for (int i = 0; i < bins; ++i) {
      const int j = left[static_cast<size_t>(i)];
      const double w = frac[static_cast<size_t>(i)];
      col[static_cast<size_t>(i)] =
          (1.0 - w) * log_cqt.At(j, t) + w * log_cqt.At(j + 1, t);
    }
    const auto ceps = plan.Apply(col);
    for (int c = 0; c < n_ceps; ++c)
      out.At(c, t) = static_cast<float>(ceps[static_cast<size_t>(c)]);
  }
  return out;
}

TimeFreqMatrix ExtractCqt(const AudioBuffer& buf, const FeatureConfig& cfg) {
  const CqtKernel kernel = BuildCqtKernel(cfg.cqt);
  return LogCompress(Cqt(buf, kernel, cfg.cqt.hop), cfg.log_floor);
}

TimeFreqMatrix ExtractCqcc(const AudioBuffer& buf, const FeatureConfig& cfg) {
  return CqccFromLogCqt(ExtractCqt(buf, cfg), cfg.n_ceps);
}

namespace {

// 25 ms frames centered at t*hop, zero-padded at the edges.
TimeFreqMatrix MelPowerMatrix(const AudioBuffer& buf, const MelConfig& mel) {
  if (buf.Empty()) throw std::runtime_error("mfsc: empty buffer");
  if (buf.sample_rate != mel.sample_rate)
    throw std::runtime_error(
        "mfsc: buffer rate " + std::to_string(buf.sample_rate) +
        " Hz does not match configured rate " +
        std::to_string(mel.sample_rate) + " Hz");
  const MelFilterbank fb = BuildMelFilterbank(mel);
  const int frame_len = mel.sample_rate / 40;  // 25 ms
  if (frame_len > mel.n_fft)
    throw std::runtime_error("mfsc: 25 ms frame exceeds n_fft");
  const int len = static_cast<int>(buf.samples.size());
  const int frames = len / mel.hop + 1;

  TimeFreqMatrix m;
  m.kind = TfKind::kPower;
  m.bins = fb.n_filters;
  m.frames = frames;
  m.hop = mel.hop;
  m.sample_rate = mel.sample_rate;
  m.bin_freqs = fb.center_freqs;
  m.values.resize(static_cast<size_t>(m.bins) * frames);

  std::vector<float> frame(static_cast<size_t>(frame_len));
  for (int t = 0; t < frames; ++t) {
    const int start = t * mel.hop - frame_len / 2;
    for (int i = 0; i < frame_len; ++i) {
      const int src = start + i;
      frame[static_cast<size_t>(i)] =
          (src >= 0 && src < len) ? buf.samples[static_cast<size_t>(src)]
                                  : 0.0f;
    }
    const auto power = DftPowerFrame(frame, mel.n_fft);
    const auto energies = fb.Apply(power);
    for (int b = 0; b < m.bins; ++b)
      m.At(b, t) = static_cast<float>(energies[static_cast<size_t>(b)]);
  }
  return m;
}

}  // namespace

TimeFreqMatrix ExtractMfsc(const AudioBuffer& buf, const FeatureConfig& cfg) {
  return LogCompress(MelPowerMatrix(buf, cfg.mel), cfg.log_floor);
}

TimeFreqMatrix ExtractMfcc(const AudioBuffer& buf, const FeatureConfig& cfg) {
  const TimeFreqMatrix mfsc = ExtractMfsc(buf, cfg);
  int n_ceps = cfg.n_ceps <= 0 ? mfsc.bins : cfg.n_ceps;
  if (n_ceps > mfsc.bins)
    throw std::runtime_error("mfcc: n_ceps exceeds filter count");
  DctPlan plan(mfsc.bins, n_ceps);

  TimeFreqMatrix out;
  out.kind = TfKind::kCepstral;
  out.bins = n_ceps;
  out.frames = mfsc.frames;
  out.hop = mfsc.hop;
  out.sample_rate = mfsc.sample_rate;
  out.bin_freqs.resize(static_cast<size_t>(n_ceps));
  for (int i = 0; i < n_ceps; ++i) out.bin_freqs[static_cast<size_t>(i)] = i;
  out.values.resize(static_cast<size_t>(n_ceps) * out.frames);

  std::vector<double> col(static_cast<size_t>(mfsc.bins));
  for (int t = 0; t < mfsc.frames; ++t) {
    for (int b = 0; b < mfsc.bins; ++b) col[static_cast<size_t>(b)] = mfsc.At(b, t);
    const auto ceps = plan.Apply(col);
    for (int c = 0; c < n_ceps; ++c)
      out.At(c, t) = static_cast<float>(ceps[static_cast<size_t>(c)]);
  }
  return out;
}

TimeFreqMatrix ExtractFeatures(const AudioBuffer& buf,
                               const FeatureConfig& cfg) {
  cfg.Validate();
  switch (cfg.kind) {
    case FeatureKind::kCqt: return ExtractCqt(buf, cfg);
    case FeatureKind::kCqcc: return ExtractCqcc(buf, cfg);
    case FeatureKind::kMfsc: return ExtractMfsc(buf, cfg);
    case FeatureKind::kMfcc: return ExtractMfcc(buf, cfg);
  }
  throw std::runtime_error("unreachable feature kind");
}

}  // namespace cqser
