// cqser/src/resample.cc

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

#include "cqser/audio/resample.h"

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace cqser {

namespace {

constexpr int kTargetRate = 16000;
constexpr double kKaiserBeta = 8.6;
constexpr double kPi = 3.14159265358979323846;

double Sinc(double x) {
  if (std::abs(x) < 1e-12) return 1.0;
  return std::sin(kPi * x) / (kPi * x);
}

}  // namespace

double BesselI0(double x) {
  double sum = 1.0, term = 1.0;
  double half = x / 2.0;
  for (int k = 1; k < 200; ++k) {
    term *= (half / k) * (half / k);
    sum += term;
    if (term < sum * 1e-18) break;
  }
  return sum;
}

AudioBuffer ResampleTo16k(const AudioBuffer& buf, int taps_per_phase) {
  if (buf.Empty()) throw std::runtime_error("resample: empty buffer");
  if (buf.sample_rate == kTargetRate) return buf;
  if (buf.sample_rate < kTargetRate)
    throw std::runtime_error(
        "resample: refusing to upsample from " +
        std::to_string(buf.sample_rate) +
        " Hz; corpus audio must be sampled at >= 16 kHz");
  if (taps_per_phase < 8 || taps_per_phase % 2 != 0)
    throw std::runtime_error("resample: taps_per_phase must be even and >= 8");

  const int64_t g = std::gcd<int64_t>(buf.sample_rate, kTargetRate);
  const int64_t up = kTargetRate / g;          // L
  const int64_t down = buf.sample_rate / g;    // M

  // Linear-phase prototype at the upsampled rate fs*L, cutoff at the output
  // Nyquist (= 1/(2M) cycles per up-sample). Odd length with an integer
  // center so the filter introduces no fractional delay.
  const int64_t num_taps = static_cast<int64_t>(taps_per_phase) * up + 1;
  const int64_t center = static_cast<int64_t>(taps_per_phase) * up / 2;
  const double cutoff = 0.5 / static_cast<double>(down);
  const double i0_beta = BesselI0(kKaiserBeta);

  std::vector<double> proto(static_cast<size_t>(num_taps));
  for (int64_t i = 0; i < num_taps; ++i) {
    double t = static_cast<double>(i - center);
    double frac = t / static_cast<double>(center);
    double win = BesselI0(kKaiserBeta * std::sqrt(std::max(0.0, 1.0 - frac * frac))) / i0_beta;
    proto[static_cast<size_t>(i)] = 2.0 * cutoff * Sinc(2.0 * cutoff * t) * win;
  }

  // Phase-major tap tables, each phase normalized to unit DC gain.
  std::vector<std::vector<double>> phases(static_cast<size_t>(up));
  for (int64_t p = 0; p < up; ++p) {
    auto& taps = phases[static_cast<size_t>(p)];
    for (int64_t i = p; i < num_taps; i += up)
      taps.push_back(proto[static_cast<size_t>(i)]);
    double sum = 0.0;
    for (double v : taps) sum += v;
    if (sum != 0.0)
      for (double& v : taps) v /= sum;
  }

  const int64_t in_len = static_cast<int64_t>(buf.samples.size());
  const int64_t out_len = std::llround(static_cast<double>(in_len) *
                                       static_cast<double>(up) /
                                       static_cast<double>(down));

  AudioBuffer out;
  out.sample_rate = kTargetRate;
  out.samples.resize(static_cast<size_t>(std::max<int64_t>(out_len, 1)));
  const float* x = buf.samples.data();

  for (int64_t j = 0; j < out_len; ++j) {
    const int64_t pos = j * down + center;   // up-domain index of output j
    const int64_t phase = pos % up;
    const int64_t anchor = pos / up;         // newest input sample used
    const auto& taps = phases[static_cast<size_t>(phase)];
    const int64_t n_taps = static_cast<int64_t>(taps.size());
    // Clip the tap range to the available input instead of padding.
    int64_t t_lo = std::max<int64_t>(0, anchor - (in_len - 1));
    int64_t t_hi = std::min<int64_t>(n_taps - 1, anchor);
    double acc = 0.0;
    for (int64_t t = t_lo; t <= t_hi; ++t)
      acc += taps[static_cast<size_t>(t)] * x[anchor - t];
    out.samples[static_cast<size_t>(j)] = static_cast<float>(acc);
  }
  if (out_len < 1) out.samples[0] = buf.samples[0];
  return out;
}

}  // namespace cqser
