// cqser/src/cqt.cc

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

#include "cqser/dsp/cqt.h"

#include <cmath>
#include <stdexcept>
#include <string>

#include "cqser/dsp/window.h"

namespace cqser {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void CqtConfig::Validate() const {
  if (sample_rate <= 0)
    throw std::runtime_error("cqt: sample_rate must be positive");
  if (bins_per_octave < 1)
    throw std::runtime_error("cqt: bins_per_octave must be >= 1");
  if (hop < 1) throw std::runtime_error("cqt: hop must be >= 1");
  const double fh = EffectiveFMax();
  if (!(f_min > 0.0) || !(f_min < fh))
    throw std::runtime_error("cqt: need 0 < f_min < f_max");
  if (fh > sample_rate / 2.0 + 1e-9)
    throw std::runtime_error("cqt: f_max " + std::to_string(fh) +
                             " Hz exceeds Nyquist " +
                             std::to_string(sample_rate / 2.0) + " Hz");
}

CqtKernel BuildCqtKernel(const CqtConfig& cfg) {
  cfg.Validate();
  const int b = cfg.bins_per_octave;
  const double f_max = cfg.EffectiveFMax();
  const double q = 1.0 / (std::exp2(1.0 / b) - 1.0);

  int n_bins = static_cast<int>(
      std::ceil(b * std::log2(f_max / cfg.f_min) - 1e-9));
  if (n_bins < 1) n_bins = 1;

  CqtKernel k;
  k.q_factor = q;
  k.sample_rate = cfg.sample_rate;
  k.bins_per_octave = b;
  for (int i = 0; i < n_bins; ++i) {
    // f = f_min * 2^(i/b), factored through ldexp so that bins exactly one
    // octave apart differ by exactly a factor of two.
    const int octave = i / b;
    const int rem = i % b;
    const double f =
        std::ldexp(cfg.f_min * std::exp2(static_cast<double>(rem) / b),
                   octave);
    if (f > f_max * (1.0 + 1e-12)) break;  // ceil overshoot: drop top bin
    k.center_freqs.push_back(f);
  }
  const int bins = k.NumBins();
  k.window_lengths.resize(static_cast<size_t>(bins));
  k.angular.resize(static_cast<size_t>(bins));
  k.windows.resize(static_cast<size_t>(bins));
  k.table_cos.resize(static_cast<size_t>(bins));
  k.table_sin.resize(static_cast<size_t>(bins));
  for (int i = 0; i < bins; ++i) {
    const double f = k.center_freqs[static_cast<size_t>(i)];
    const int n = static_cast<int>(std::ceil(q * cfg.sample_rate / f));
    const double w = 2.0 * kPi * q / n;
    k.window_lengths[static_cast<size_t>(i)] = n;
    k.angular[static_cast<size_t>(i)] = w;
    auto win = HannWindow(n);
    double sum = 0.0;
    for (double v : win) sum += v;
    for (double& v : win) v /= sum;
    auto& tc = k.table_cos[static_cast<size_t>(i)];
    auto& ts = k.table_sin[static_cast<size_t>(i)];
    tc.resize(static_cast<size_t>(n));
    ts.resize(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
      tc[static_cast<size_t>(j)] = win[static_cast<size_t>(j)] * std::cos(w * j);
      ts[static_cast<size_t>(j)] = win[static_cast<size_t>(j)] * std::sin(w * j);
    }
    k.windows[static_cast<size_t>(i)] = std::move(win);
  }
  return k;
}

TimeFreqMatrix Cqt(const AudioBuffer& buf, const CqtKernel& kernel, int hop) {
  if (buf.Empty()) throw std::runtime_error("cqt: empty buffer");
  if (hop < 1) throw std::runtime_error("cqt: hop must be >= 1");
  if (buf.sample_rate != kernel.sample_rate)
    throw std::runtime_error(
        "cqt: buffer rate " + std::to_string(buf.sample_rate) +
        " Hz does not match kernel rate " +
        std::to_string(kernel.sample_rate) + " Hz");

  const int len = static_cast<int>(buf.samples.size());
  const int frames = len / hop + 1;
  const int bins = kernel.NumBins();
  const float* x = buf.samples.data();

  TimeFreqMatrix m;
  m.kind = TfKind::kMagnitude;
  m.bins = bins;
  m.frames = frames;
  m.hop = hop;
  m.sample_rate = buf.sample_rate;
  m.bin_freqs = kernel.center_freqs;
  m.values.resize(static_cast<size_t>(bins) * frames);

  for (int k = 0; k < bins; ++k) {
    const int n = kernel.window_lengths[static_cast<size_t>(k)];
    const double* tc = kernel.table_cos[static_cast<size_t>(k)].data();
    const double* ts = kernel.table_sin[static_cast<size_t>(k)].data();
    const int half = n / 2;
    float* row = m.Row(k);
    for (int t = 0; t < frames; ++t) {
      const int start = t * hop - half;  // window center at t*hop
      int lo = start < 0 ? -start : 0;
      int hi = std::min(n, len - start);
      double re = 0.0, im = 0.0;
      const float* xs = x + start;
      for (int j = lo; j < hi; ++j) {
        re += tc[j] * xs[j];
        im += ts[j] * xs[j];
      }
      row[t] = static_cast<float>(std::sqrt(re * re + im * im));
    }
  }
  return m;
}

}  // namespace cqser
