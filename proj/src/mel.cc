// cqser/src/mel.cc

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

#include "cqser/dsp/mel.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cqser {

double HzToMel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }

double MelToHz(double mel) {
  return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}

void MelConfig::Validate() const {
  if (sample_rate <= 0)
    throw std::runtime_error("mel: sample_rate must be positive");
  if (n_filters < 1) throw std::runtime_error("mel: n_filters must be >= 1");
  if (n_fft < 2 || (n_fft & (n_fft - 1)) != 0)
    throw std::runtime_error("mel: n_fft must be a power of two, got " +
                             std::to_string(n_fft));
  if (hop < 1) throw std::runtime_error("mel: hop must be >= 1");
  const double fh = EffectiveFHigh();
  if (!(f_low >= 0.0) || !(f_low < fh))
    throw std::runtime_error("mel: need 0 <= f_low < f_high");
  if (fh > sample_rate / 2.0 + 1e-9)
    throw std::runtime_error("mel: f_high " + std::to_string(fh) +
                             " Hz exceeds Nyquist " +
                             std::to_string(sample_rate / 2.0) + " Hz");
  if (n_filters > n_fft / 2 - 1)
    throw std::runtime_error(
        "mel: " + std::to_string(n_filters) +
        " filters exceed the spectral resolution of a " +
        std::to_string(n_fft) + "-point FFT (adjacent centers collide)");
}

std::vector<double> MelFilterbank::Apply(
    const std::vector<double>& power) const {
  if (power.size() != static_cast<size_t>(n_bins))
    throw std::runtime_error("mel: power spectrum size mismatch");
  std::vector<double> energies(static_cast<size_t>(n_filters), 0.0);
  for (int f = 0; f < n_filters; ++f) {
    const double* row = Row(f);
    double acc = 0.0;
    for (int k = 0; k < n_bins; ++k) acc += row[k] * power[static_cast<size_t>(k)];
    energies[static_cast<size_t>(f)] = acc;
  }
  return energies;
}

MelFilterbank BuildMelFilterbank(const MelConfig& cfg) {
  cfg.Validate();
  const int n_bins = cfg.n_fft / 2 + 1;
  const double bin_hz = static_cast<double>(cfg.sample_rate) / cfg.n_fft;
  const double mel_lo = HzToMel(cfg.f_low);
  const double mel_hi = HzToMel(cfg.EffectiveFHigh());
  const double mel_step = (mel_hi - mel_lo) / (cfg.n_filters + 1);

  MelFilterbank fb;
  fb.n_filters = cfg.n_filters;
  fb.n_bins = n_bins;
  fb.center_freqs.resize(static_cast<size_t>(cfg.n_filters));
  fb.weights.assign(static_cast<size_t>(cfg.n_filters) * n_bins, 0.0);

  for (int f = 0; f < cfg.n_filters; ++f) {
    const double left = MelToHz(mel_lo + f * mel_step);
    const double center = MelToHz(mel_lo + (f + 1) * mel_step);
    const double right = MelToHz(mel_lo + (f + 2) * mel_step);
    fb.center_freqs[static_cast<size_t>(f)] = center;
    double* row = fb.weights.data() + static_cast<size_t>(f) * n_bins;
    double peak = 0.0;
    for (int k = 0; k < n_bins; ++k) {
      const double hz = k * bin_hz;
      double w = 0.0;
      if (hz > left && hz < right)
        w = hz <= center ? (hz - left) / (center - left)
                         : (right - hz) / (right - center);
      row[k] = w;
      if (w > peak) peak = w;
    }
    if (peak > 0.0) {
      for (int k = 0; k < n_bins; ++k) row[k] /= peak;
    } else {
      // Triangle narrower than the FFT grid: single-point filter at the
      // nearest bin keeps the bank usable for dense configurations.
      int k = static_cast<int>(std::lround(center / bin_hz));
      if (k < 0) k = 0;
      if (k >= n_bins) k = n_bins - 1;
      row[k] = 1.0;
    }
  }
  return fb;
}

}  // namespace cqser
