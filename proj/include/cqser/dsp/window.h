// cqser/dsp/window.h

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

#ifndef CQSER_DSP_WINDOW_H_
#define CQSER_DSP_WINDOW_H_

#include <cmath>
#include <vector>

namespace cqser {

// Symmetric Hann window, w[n] = 0.5 - 0.5 cos(2 pi n / (N-1)).
inline std::vector<double> HannWindow(int n) {
  std::vector<double> w(static_cast<size_t>(n), 1.0);
  if (n <= 1) return w;
  const double step = 2.0 * 3.14159265358979323846 / (n - 1);
  for (int i = 0; i < n; ++i)
    w[static_cast<size_t>(i)] = 0.5 - 0.5 * std::cos(step * i);
  return w;
}

}  // namespace cqser

#endif  // CQSER_DSP_WINDOW_H_
