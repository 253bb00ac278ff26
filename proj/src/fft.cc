// cqser/src/fft.cc

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

#include "cqser/dsp/fft.h"

#include <cmath>
#include <stdexcept>

#include "cqser/dsp/window.h"

namespace cqser {

namespace {
constexpr double kPi = 3.14159265358979323846;

bool IsPowerOfTwo(size_t n) { return n != 0 && (n & (n - 1)) == 0; }
}  // namespace

void Fft(std::vector<std::complex<double>>& a, bool inverse) {
  const size_t n = a.size();
  if (!IsPowerOfTwo(n))
    throw std::runtime_error("fft: size must be a power of two, got " +
                             std::to_string(n));
  // Bit-reversal permutation.
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (size_t len = 2; len <= n; len <<= 1) {
    const double ang = (inverse ? 2.0 : -2.0) * kPi / static_cast<double>(len);
    const std::complex<double> wlen(std::cos(ang), std::sin(ang));
    for (size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (size_t j = 0; j < len / 2; ++j) {
        std::complex<double> u = a[i + j];
        std::complex<double> v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
  if (inverse)
    for (auto& x : a) x /= static_cast<double>(n);
}

std::vector<double> DftPowerFrame(std::span<const float> frame, int n_fft) {
  if (n_fft <= 0 || !IsPowerOfTwo(static_cast<size_t>(n_fft)))
    throw std::runtime_error("dft_power_frame: n_fft must be a power of two");
  if (frame.size() > static_cast<size_t>(n_fft))
    throw std::runtime_error("dft_power_frame: frame longer than n_fft");
  std::vector<std::complex<double>> a(static_cast<size_t>(n_fft));
  const auto win = HannWindow(static_cast<int>(frame.size()));
  for (size_t i = 0; i < frame.size(); ++i)
    a[i] = std::complex<double>(win[i] * frame[i], 0.0);
  Fft(a, false);
  std::vector<double> power(static_cast<size_t>(n_fft / 2 + 1));
  for (size_t k = 0; k < power.size(); ++k) power[k] = std::norm(a[k]);
  return power;
}

std::vector<double> FftConvolve(std::span<const float> a,
                                std::span<const float> b) {
  if (a.empty() || b.empty()) return {};
  const size_t out_len = a.size() + b.size() - 1;
  size_t n = 1;
  while (n < out_len) n <<= 1;
  std::vector<std::complex<double>> fa(n), fb(n);
  for (size_t i = 0; i < a.size(); ++i) fa[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) fb[i] = b[i];
  Fft(fa, false);
  Fft(fb, false);
  for (size_t i = 0; i < n; ++i) fa[i] *= fb[i];
  Fft(fa, true);
  std::vector<double> out(out_len);
  for (size_t i = 0; i < out_len; ++i) out[i] = fa[i].real();
  return out;
}

}  // namespace cqser
