// cqser/dsp/mel.h

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

#ifndef CQSER_DSP_MEL_H_
#define CQSER_DSP_MEL_H_

#include <vector>

namespace cqser {

struct MelConfig {
  int n_fft = 512;
  int hop = 160;
  int n_filters = 128;
  double f_low = 0.0;
  double f_high = 0.0;  // <= 0 means Nyquist
  int sample_rate = 16000;

  double EffectiveFHigh() const {
    return f_high > 0.0 ? f_high : sample_rate / 2.0;
  }
  void Validate() const;  // throws on inconsistent settings
};

// mel(f) = 2595 log10(1 + f/700) and its inverse.
double HzToMel(double hz);
double MelToHz(double mel);

// Triangular mel filterbank, n_filters x (n_fft/2+1). Centers are equally
// spaced on the mel scale between f_low and f_high; each row is rescaled so
// its maximum is exactly 1. A filter narrower than the FFT grid falls back
// to a single 1.0 at the bin nearest its center, so dense banks (e.g. 128
// filters over a 512-point FFT) still construct with contiguous support.
struct MelFilterbank {
  int n_filters = 0;
  int n_bins = 0;                    // n_fft/2 + 1
  std::vector<double> center_freqs;  // Hz, strictly increasing
  std::vector<double> weights;       // row-major n_filters x n_bins

  const double* Row(int f) const {
    return weights.data() + static_cast<size_t>(f) * n_bins;
  }
  // energies[f] = dot(row_f, power_spectrum)
  std::vector<double> Apply(const std::vector<double>& power) const;
};

MelFilterbank BuildMelFilterbank(const MelConfig& cfg);

}  // namespace cqser

#endif  // CQSER_DSP_MEL_H_
