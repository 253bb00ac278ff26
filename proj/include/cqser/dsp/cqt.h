// cqser/dsp/cqt.h

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

#ifndef CQSER_DSP_CQT_H_
#define CQSER_DSP_CQT_H_

#include <vector>

#include "cqser/audio/wav.h"
#include "cqser/dsp/tfm.h"

namespace cqser {

struct CqtConfig {
  double f_min = 32.7;
  double f_max = 0.0;  // <= 0 means Nyquist
  int bins_per_octave = 3;
  int hop = 64;
  int sample_rate = 16000;

  double EffectiveFMax() const {
    return f_max > 0.0 ? f_max : sample_rate / 2.0;
  }
  void Validate() const;  // throws on inconsistent settings
};

// Precomputed per-bin analysis kernel for
//   X[k] = (1/N[k]) sum_n W[k,n] x[n] e^{-j w_k n},  w_k = 2 pi Q / N[k]
// with center frequencies f_k = f_min 2^(k/B) and N[k] = ceil(Q fs / f_k).
//
// W[k,n] is a Hann window scaled so that (1/N[k]) sum_n W[k,n] = 1: a tone
// at a bin's center frequency then has the same response in every bin. (The
// per-bin scale of W is a free choice; an ordinary unit-sum window would
// suppress long low-frequency bins by 1/N[k] relative to short ones and bury
// them under the sidelobes of the high bins.)
struct CqtKernel {
  double q_factor = 0.0;
  int sample_rate = 0;
  int bins_per_octave = 0;
  std::vector<double> center_freqs;            // f_k, Hz, strictly increasing
  std::vector<int> window_lengths;             // N[k], strictly decreasing
  std::vector<double> angular;                 // w_k, radians/sample
  std::vector<std::vector<double>> windows;    // W[k][n] / N[k] (unit sum)
  // Window-premultiplied oscillator tables for the transform inner loop.
  std::vector<std::vector<double>> table_cos;  // windows[k][n] * cos(w_k n)
  std::vector<std::vector<double>> table_sin;  // windows[k][n] * sin(w_k n)

  int NumBins() const { return static_cast<int>(center_freqs.size()); }
};

CqtKernel BuildCqtKernel(const CqtConfig& cfg);

// Constant-Q magnitude spectrogram. frames = floor(len/hop) + 1, the k-th
// window centered at t*hop, signal treated as zero outside its extent.
// Throws if buf.sample_rate differs from the kernel's rate.
TimeFreqMatrix Cqt(const AudioBuffer& buf, const CqtKernel& kernel, int hop);

}  // namespace cqser

#endif  // CQSER_DSP_CQT_H_
