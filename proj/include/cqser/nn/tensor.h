// cqser/nn/tensor.h

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

#ifndef CQSER_NN_TENSOR_H_
#define CQSER_NN_TENSOR_H_

#include <cstddef>
#include <string>
#include <vector>

namespace cqser {

// [batch][channel][time], row-major, time contiguous.
template <typename T>
struct Tensor3 {
  int n = 0, c = 0, t = 0;
  std::vector<T> d;

  void Resize(int n_, int c_, int t_) {
    n = n_;
    c = c_;
    t = t_;
    d.assign(static_cast<size_t>(n_) * c_ * t_, T(0));
  }
  T* Row(int i, int ch) {
    return d.data() + (static_cast<size_t>(i) * c + ch) * t;
  }
  const T* Row(int i, int ch) const {
    return d.data() + (static_cast<size_t>(i) * c + ch) * t;
  }
};

// [rows][cols], row-major.
template <typename T>
struct Mat {
  int rows = 0, cols = 0;
  std::vector<T> d;

  void Resize(int r, int c) {
    rows = r;
    cols = c;
    d.assign(static_cast<size_t>(r) * c, T(0));
  }
  T* Row(int i) { return d.data() + static_cast<size_t>(i) * cols; }
  const T* Row(int i) const { return d.data() + static_cast<size_t>(i) * cols; }
};

// A named view of one parameter tensor and its gradient.
template <typename T>
struct ParamRef {
  std::string name;
  T* data = nullptr;
  T* grad = nullptr;  // null for non-trainable state (running BN stats)
  size_t size = 0;
};

}  // namespace cqser

#endif  // CQSER_NN_TENSOR_H_
