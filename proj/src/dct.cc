// cqser/src/dct.cc

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

#include "cqser/dsp/dct.h"

#include <cmath>
#include <stdexcept>

namespace cqser {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

DctPlan::DctPlan(int length, int n_out) : length_(length), n_out_(n_out) {
  if (length < 1) throw std::runtime_error("dct: length must be >= 1");
  if (n_out < 1 || n_out > length)
    throw std::runtime_error("dct: need 1 <= n_out <= length, got n_out=" +
                             std::to_string(n_out) + " length=" +
                             std::to_string(length));
  basis_.resize(static_cast<size_t>(n_out) * length);
  const double s0 = std::sqrt(1.0 / length);
  const double sk = std::sqrt(2.0 / length);
  for (int k = 0; k < n_out; ++k) {
    const double scale = (k == 0) ? s0 : sk;
    for (int n = 0; n < length; ++n)
      basis_[static_cast<size_t>(k) * length + n] =
          scale * std::cos(kPi * (2.0 * n + 1.0) * k / (2.0 * length));
  }
}

std::vector<double> DctPlan::Apply(std::span<const double> vec) const {
  if (vec.size() != static_cast<size_t>(length_))
    throw std::runtime_error("dct: input length mismatch");
  std::vector<double> out(static_cast<size_t>(n_out_));
  for (int k = 0; k < n_out_; ++k) {
    const double* row = basis_.data() + static_cast<size_t>(k) * length_;
    double acc = 0.0;
    for (int n = 0; n < length_; ++n) acc += row[n] * vec[static_cast<size_t>(n)];
    out[static_cast<size_t>(k)] = acc;
  }
  return out;
}

std::vector<double> DctPlan::Invert(std::span<const double> coeffs) const {
  if (coeffs.size() != static_cast<size_t>(n_out_))
    throw std::runtime_error("dct: coefficient length mismatch");
  std::vector<double> out(static_cast<size_t>(length_), 0.0);
  for (int k = 0; k < n_out_; ++k) {
    const double* row = basis_.data() + static_cast<size_t>(k) * length_;
    const double c = coeffs[static_cast<size_t>(k)];
    for (int n = 0; n < length_; ++n) out[static_cast<size_t>(n)] += c * row[n];
  }
  return out;
}

std::vector<double> Dct2Orthonormal(std::span<const double> vec, int n_out) {
  DctPlan plan(static_cast<int>(vec.size()), n_out);
  return plan.Apply(vec);
}

}  // namespace cqser
