// cqser/dsp/fft.h

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

#ifndef CQSER_DSP_FFT_H_
#define CQSER_DSP_FFT_H_

#include <complex>
#include <span>
#include <vector>

namespace cqser {

// In-place radix-2 FFT. a.size() must be a power of two. The inverse
// transform includes the 1/N factor.
void Fft(std::vector<std::complex<double>>& a, bool inverse);

// Periodogram of one analysis frame: |FFT(hann(frame) zero-padded to
// n_fft)|^2 for the n_fft/2+1 non-negative frequency bins. n_fft must be a
// power of two and len(frame) <= n_fft.
std::vector<double> DftPowerFrame(std::span<const float> frame, int n_fft);

// Full linear convolution via FFT, output length a.size()+b.size()-1.
std::vector<double> FftConvolve(std::span<const float> a,
                                std::span<const float> b);

}  // namespace cqser

#endif  // CQSER_DSP_FFT_H_
