// cqser/nn/adam.h

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

#ifndef CQSER_NN_ADAM_H_
#define CQSER_NN_ADAM_H_

#include <cmath>
#include <stdexcept>
#include <vector>

#include "cqser/nn/tensor.h"

namespace cqser {

// Bias-corrected Adam over a fixed parameter list.
template <typename T>
class Adam {
 public:
  Adam(const std::vector<ParamRef<T>>& params, double lr,
       double beta1 = 0.9, double beta2 = 0.999, double eps = 1e-8)
      : lr_(lr), beta1_(beta1), beta2_(beta2), eps_(eps) {
    m_.resize(params.size());
    v_.resize(params.size());
    for (size_t i = 0; i < params.size(); ++i) {
      m_[i].assign(params[i].size, T(0));
      v_[i].assign(params[i].size, T(0));
    }
  }

  void Step(const std::vector<ParamRef<T>>& params) {
    if (params.size() != m_.size())
      throw std::runtime_error("adam: parameter list changed");
    ++t_;
    const double bc1 = 1.0 - std::pow(beta1_, t_);
    const double bc2 = 1.0 - std::pow(beta2_, t_);
    for (size_t i = 0; i < params.size(); ++i) {
      T* p = params[i].data;
      const T* g = params[i].grad;
      T* m = m_[i].data();
      T* v = v_[i].data();
      for (size_t k = 0; k < params[i].size; ++k) {
        m[k] = static_cast<T>(beta1_ * m[k] + (1.0 - beta1_) * g[k]);
        v[k] = static_cast<T>(beta2_ * v[k] +
                              (1.0 - beta2_) * static_cast<double>(g[k]) * g[k]);
        const double mhat = m[k] / bc1;
        const double vhat = v[k] / bc2;
        p[k] = static_cast<T>(p[k] - lr_ * mhat / (std::sqrt(vhat) + eps_));
      }
    }
  }

  int64_t step_count() const { return t_; }

 private:
  double lr_, beta1_, beta2_, eps_;
  int64_t t_ = 0;
  std::vector<std::vector<T>> m_, v_;
};

}  // namespace cqser

#endif  // CQSER_NN_ADAM_H_
