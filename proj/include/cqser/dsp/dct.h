// cqser/dsp/dct.h

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

#ifndef CQSER_DSP_DCT_H_
#define CQSER_DSP_DCT_H_

#include <span>
#include <vector>

namespace cqser {

// Orthonormal DCT-II basis, n_out x length, row-major:
//   G[0][n] = sqrt(1/L) * cos(pi (2n+1) * 0 / (2L))
//   G[k][n] = sqrt(2/L) * cos(pi (2n+1) k / (2L))
// G * G^T = I when n_out == length.
class DctPlan {
 public:
  DctPlan(int length, int n_out);

  std::vector<double> Apply(std::span<const double> vec) const;
  // Inverse (transpose) from n_out coefficients back to full length;
  // exact when n_out == length.
  std::vector<double> Invert(std::span<const double> coeffs) const;

  int length() const { return length_; }
  int n_out() const { return n_out_; }
  double Basis(int k, int n) const {
    return basis_[static_cast<size_t>(k) * length_ + n];
  }

 private:
  int length_;
  int n_out_;
  std::vector<double> basis_;
};

// One-shot convenience: first n_out orthonormal DCT-II coefficients.
std::vector<double> Dct2Orthonormal(std::span<const double> vec, int n_out);

}  // namespace cqser

#endif  // CQSER_DSP_DCT_H_
