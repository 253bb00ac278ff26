// cqser/nn/layers.h

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

#ifndef CQSER_NN_LAYERS_H_
#define CQSER_NN_LAYERS_H_

#include <cmath>
#include <stdexcept>
#include <string>

#include "cqser/nn/tensor.h"
#include "cqser/util/rng.h"

namespace cqser {

// Valid (no padding) dilated 1-D convolution over the time axis.
// Output length T' = T - (kernel-1)*dilation.
template <typename T>
struct Conv1d {
  int in_c = 0, out_c = 0, kernel = 1, dilation = 1;
  std::vector<T> w;   // [out_c][in_c][kernel]
  std::vector<T> b;   // [out_c]
  std::vector<T> gw;
  std::vector<T> gb;

  void Configure(int in_channels, int out_channels, int k, int d) {
    in_c = in_channels;
    out_c = out_channels;
    kernel = k;
    dilation = d;
    w.assign(static_cast<size_t>(out_c) * in_c * kernel, T(0));
    b.assign(static_cast<size_t>(out_c), T(0));
    gw.assign(w.size(), T(0));
    gb.assign(b.size(), T(0));
  }

  void Init(Rng& rng) {
    const double std = std::sqrt(2.0 / (static_cast<double>(in_c) * kernel));
    for (auto& v : w) v = static_cast<T>(rng.Gaussian() * std);
    for (auto& v : b) v = T(0);
  }

  int OutLen(int t_in) const { return t_in - (kernel - 1) * dilation; }

  const T* W(int oc, int ic) const {
    return w.data() + (static_cast<size_t>(oc) * in_c + ic) * kernel;
  }
  T* Gw(int oc, int ic) {
    return gw.data() + (static_cast<size_t>(oc) * in_c + ic) * kernel;
  }

  void Forward(const Tensor3<T>& x, Tensor3<T>& y) const {
    const int t_out = OutLen(x.t);
    if (t_out < 1)
      throw std::runtime_error(
          "conv1d: input of " + std::to_string(x.t) +
          " frames is below the receptive requirement of " +
          std::to_string((kernel - 1) * dilation + 1));
    if (x.c != in_c) throw std::runtime_error("conv1d: channel mismatch");
    y.Resize(x.n, out_c, t_out);
    for (int i = 0; i < x.n; ++i) {
      for (int oc = 0; oc < out_c; ++oc) {
        T* yr = y.Row(i, oc);
        const T bias = b[static_cast<size_t>(oc)];
        for (int tt = 0; tt < t_out; ++tt) yr[tt] = bias;
        for (int ic = 0; ic < in_c; ++ic) {
          const T* xr = x.Row(i, ic);
          const T* wr = W(oc, ic);
          for (int kk = 0; kk < kernel; ++kk) {
            const T wv = wr[kk];
            const T* xs = xr + kk * dilation;
            for (int tt = 0; tt < t_out; ++tt) yr[tt] += wv * xs[tt];
          }
        }
      }
    }
  }

  // Accumulates into gw/gb; writes gx (resized here).
  void Backward(const Tensor3<T>& x, const Tensor3<T>& gy, Tensor3<T>& gx) {
    const int t_out = gy.t;
    gx.Resize(x.n, x.c, x.t);
    for (int i = 0; i < x.n; ++i) {
      for (int oc = 0; oc < out_c; ++oc) {
        const T* gyr = gy.Row(i, oc);
        T acc_b = T(0);
        for (int tt = 0; tt < t_out; ++tt) acc_b += gyr[tt];
        gb[static_cast<size_t>(oc)] += acc_b;
        for (int ic = 0; ic < in_c; ++ic) {
          const T* xr = x.Row(i, ic);
          T* gxr = gx.Row(i, ic);
          const T* wr = W(oc, ic);
          T* gwr = Gw(oc, ic);
          for (int kk = 0; kk < kernel; ++kk) {
            const T* xs = xr + kk * dilation;
            T* gxs = gxr + kk * dilation;
            const T wv = wr[kk];
            T acc_w = T(0);
            for (int tt = 0; tt < t_out; ++tt) {
              acc_w += gyr[tt] * xs[tt];
              gxs[tt] += wv * gyr[tt];
            }
            gwr[kk] += acc_w;
          }
        }
      }
    }
  }
};

// Batch normalization over channels; statistics span (batch, time).
// Population variance is used both for normalization and for the running
// estimates; running = momentum*running + (1-momentum)*batch.
template <typename T>
struct BatchNorm1d {
  int c = 0;
  T momentum = T(0.9);
  T eps = T(1e-5);
  std::vector<T> gamma, beta, run_mean, run_var;
  std::vector<T> ggamma, gbeta;

  // caches for backward
  Tensor3<T> xhat;
  std::vector<T> inv_std;

  void Configure(int channels) {
    c = channels;
    gamma.assign(static_cast<size_t>(c), T(1));
    beta.assign(static_cast<size_t>(c), T(0));
    run_mean.assign(static_cast<size_t>(c), T(0));
    run_var.assign(static_cast<size_t>(c), T(1));
    ggamma.assign(static_cast<size_t>(c), T(0));
    gbeta.assign(static_cast<size_t>(c), T(0));
  }

  void Forward(const Tensor3<T>& x, Tensor3<T>& y, bool train) {
    if (x.c != c) throw std::runtime_error("batchnorm: channel mismatch");
    y.Resize(x.n, x.c, x.t);
    const size_t r = static_cast<size_t>(x.n) * x.t;
    if (train) {
      xhat.Resize(x.n, x.c, x.t);
      inv_std.assign(static_cast<size_t>(c), T(0));
    }
    for (int ch = 0; ch < c; ++ch) {
      T mean, var;
      if (train) {
        double s = 0.0;
        for (int i = 0; i < x.n; ++i) {
          const T* xr = x.Row(i, ch);
          for (int tt = 0; tt < x.t; ++tt) s += xr[tt];
        }
        mean = static_cast<T>(s / static_cast<double>(r));
        double v = 0.0;
        for (int i = 0; i < x.n; ++i) {
          const T* xr = x.Row(i, ch);
          for (int tt = 0; tt < x.t; ++tt) {
            const double dd = xr[tt] - mean;
            v += dd * dd;
          }
        }
        var = static_cast<T>(v / static_cast<double>(r));
        run_mean[static_cast<size_t>(ch)] =
            momentum * run_mean[static_cast<size_t>(ch)] + (T(1) - momentum) * mean;
        run_var[static_cast<size_t>(ch)] =
            momentum * run_var[static_cast<size_t>(ch)] + (T(1) - momentum) * var;
      } else {
        mean = run_mean[static_cast<size_t>(ch)];
        var = run_var[static_cast<size_t>(ch)];
      }
      const T istd = T(1) / std::sqrt(var + eps);
      if (train) inv_std[static_cast<size_t>(ch)] = istd;
      const T g = gamma[static_cast<size_t>(ch)];
      const T bb = beta[static_cast<size_t>(ch)];
      for (int i = 0; i < x.n; ++i) {
        const T* xr = x.Row(i, ch);
        T* yr = y.Row(i, ch);
        T* hr = train ? xhat.Row(i, ch) : nullptr;
        for (int tt = 0; tt < x.t; ++tt) {
          const T h = (xr[tt] - mean) * istd;
          if (train) hr[tt] = h;
          yr[tt] = g * h + bb;
        }
      }
    }
  }

  // Train-mode backward through the batch statistics.
  void Backward(const Tensor3<T>& gy, Tensor3<T>& gx) {
    gx.Resize(gy.n, gy.c, gy.t);
    const T r = static_cast<T>(static_cast<size_t>(gy.n) * gy.t);
    for (int ch = 0; ch < c; ++ch) {
      const T g = gamma[static_cast<size_t>(ch)];
      const T istd = inv_std[static_cast<size_t>(ch)];
      double sum_gy = 0.0, sum_gyh = 0.0;
      for (int i = 0; i < gy.n; ++i) {
        const T* gr = gy.Row(i, ch);
        const T* hr = xhat.Row(i, ch);
        for (int tt = 0; tt < gy.t; ++tt) {
          sum_gy += gr[tt];
          sum_gyh += static_cast<double>(gr[tt]) * hr[tt];
        }
      }
      ggamma[static_cast<size_t>(ch)] += static_cast<T>(sum_gyh);
      gbeta[static_cast<size_t>(ch)] += static_cast<T>(sum_gy);
      const T mean_gy = static_cast<T>(sum_gy) / r;
      const T mean_gyh = static_cast<T>(sum_gyh) / r;
      for (int i = 0; i < gy.n; ++i) {
        const T* gr = gy.Row(i, ch);
        const T* hr = xhat.Row(i, ch);
        T* xr = gx.Row(i, ch);
        for (int tt = 0; tt < gy.t; ++tt)
          xr[tt] = g * istd * (gr[tt] - mean_gy - hr[tt] * mean_gyh);
      }
    }
  }
};

// Temporal statistics pooling: per-channel mean and standard deviation
// (population variance + 1e-10 under the root), concatenated to 2c values.
template <typename T>
struct StatsPool {
  static constexpr double kVarFloor = 1e-10;

  // caches
  std::vector<T> mean;  // [n][c]
  std::vector<T> sd;    // [n][c]

  void Forward(const Tensor3<T>& x, Mat<T>& y) {
    if (x.t < 1) throw std::runtime_error("stats_pool: empty time axis");
    y.Resize(x.n, 2 * x.c);
    mean.assign(static_cast<size_t>(x.n) * x.c, T(0));
    sd.assign(static_cast<size_t>(x.n) * x.c, T(0));
    for (int i = 0; i < x.n; ++i) {
      T* yr = y.Row(i);
      for (int ch = 0; ch < x.c; ++ch) {
        const T* xr = x.Row(i, ch);
        double s = 0.0;
        for (int tt = 0; tt < x.t; ++tt) s += xr[tt];
        const double mu = s / x.t;
        double v = 0.0;
        for (int tt = 0; tt < x.t; ++tt) {
          const double dd = xr[tt] - mu;
          v += dd * dd;
        }
        v /= x.t;
        const double stdev = std::sqrt(v + kVarFloor);
        mean[static_cast<size_t>(i) * x.c + ch] = static_cast<T>(mu);
        sd[static_cast<size_t>(i) * x.c + ch] = static_cast<T>(stdev);
        yr[ch] = static_cast<T>(mu);
        yr[x.c + ch] = static_cast<T>(stdev);
      }
    }
  }

  void Backward(const Tensor3<T>& x, const Mat<T>& gy, Tensor3<T>& gx) {
    gx.Resize(x.n, x.c, x.t);
    const T inv_t = T(1) / static_cast<T>(x.t);
    for (int i = 0; i < x.n; ++i) {
      const T* gr = gy.Row(i);
      for (int ch = 0; ch < x.c; ++ch) {
        const T* xr = x.Row(i, ch);
        T* gxr = gx.Row(i, ch);
        const T mu = mean[static_cast<size_t>(i) * x.c + ch];
        const T stdev = sd[static_cast<size_t>(i) * x.c + ch];
        const T gmu = gr[ch];
        const T gsd = gr[x.c + ch];
        for (int tt = 0; tt < x.t; ++tt)
          gxr[tt] = gmu * inv_t + gsd * (xr[tt] - mu) * inv_t / stdev;
      }
    }
  }
};

// Affine layer y = x W^T + b.
template <typename T>
struct Dense {
  int in_f = 0, out_f = 0;
  std::vector<T> w;  // [out_f][in_f]
  std::vector<T> b;
  std::vector<T> gw, gb;

  void Configure(int in_features, int out_features) {
    in_f = in_features;
    out_f = out_features;
    w.assign(static_cast<size_t>(out_f) * in_f, T(0));
    b.assign(static_cast<size_t>(out_f), T(0));
    gw.assign(w.size(), T(0));
    gb.assign(b.size(), T(0));
  }

  void Init(Rng& rng) {
    const double std = std::sqrt(2.0 / static_cast<double>(in_f));
    for (auto& v : w) v = static_cast<T>(rng.Gaussian() * std);
    for (auto& v : b) v = T(0);
  }

  void Forward(const Mat<T>& x, Mat<T>& y) const {
    if (x.cols != in_f) throw std::runtime_error("dense: feature mismatch");
    y.Resize(x.rows, out_f);
    for (int i = 0; i < x.rows; ++i) {
      const T* xr = x.Row(i);
      T* yr = y.Row(i);
      for (int o = 0; o < out_f; ++o) {
        const T* wr = w.data() + static_cast<size_t>(o) * in_f;
        T acc = b[static_cast<size_t>(o)];
        for (int k = 0; k < in_f; ++k) acc += wr[k] * xr[k];
        yr[o] = acc;
      }
    }
  }

  void Backward(const Mat<T>& x, const Mat<T>& gy, Mat<T>& gx) {
    gx.Resize(x.rows, in_f);
    for (int i = 0; i < x.rows; ++i) {
      const T* xr = x.Row(i);
      const T* gr = gy.Row(i);
      T* gxr = gx.Row(i);
      for (int o = 0; o < out_f; ++o) {
        const T g = gr[o];
        gb[static_cast<size_t>(o)] += g;
        const T* wr = w.data() + static_cast<size_t>(o) * in_f;
        T* gwr = gw.data() + static_cast<size_t>(o) * in_f;
        for (int k = 0; k < in_f; ++k) {
          gwr[k] += g * xr[k];
          gxr[k] += g * wr[k];
        }
      }
    }
  }
};

// Inverted dropout over a matrix; identity in eval mode.
template <typename T>
struct Dropout {
  T p = T(0.3);
  Mat<T> mask;

  void Forward(const Mat<T>& x, Mat<T>& y, bool train, Rng* rng) {
    y.Resize(x.rows, x.cols);
    if (!train || p <= T(0)) {
      y.d = x.d;
      mask.Resize(0, 0);
      return;
    }
    mask.Resize(x.rows, x.cols);
    const T keep = T(1) - p;
    const T scale = T(1) / keep;
    for (size_t i = 0; i < x.d.size(); ++i) {
      const T m = (rng->Uniform() < static_cast<double>(keep)) ? scale : T(0);
      mask.d[i] = m;
      y.d[i] = x.d[i] * m;
    }
  }

  void Backward(const Mat<T>& gy, Mat<T>& gx) const {
    gx.Resize(gy.rows, gy.cols);
    if (mask.d.empty()) {
      gx.d = gy.d;
      return;
    }
    for (size_t i = 0; i < gy.d.size(); ++i) gx.d[i] = gy.d[i] * mask.d[i];
  }
};

// Row-wise numerically-stable softmax.
template <typename T>
inline void Softmax(const Mat<T>& logits, Mat<T>& probs) {
  probs.Resize(logits.rows, logits.cols);
  for (int i = 0; i < logits.rows; ++i) {
    const T* lr = logits.Row(i);
    T* pr = probs.Row(i);
    T mx = lr[0];
    for (int k = 1; k < logits.cols; ++k) mx = std::max(mx, lr[k]);
    double sum = 0.0;
    for (int k = 0; k < logits.cols; ++k) {
      const double e = std::exp(static_cast<double>(lr[k] - mx));
      pr[k] = static_cast<T>(e);
      sum += e;
    }
    for (int k = 0; k < logits.cols; ++k)
      pr[k] = static_cast<T>(pr[k] / sum);
  }
}

// Mean cross-entropy over the batch.
template <typename T>
inline double CrossEntropy(const Mat<T>& probs, const std::vector<int>& labels) {
  double loss = 0.0;
  for (int i = 0; i < probs.rows; ++i)
    loss -= std::log(std::max(static_cast<double>(probs.Row(i)[labels[static_cast<size_t>(i)]]),
                              1e-30));
  return loss / probs.rows;
}

// d(mean CE)/d logits = (p - onehot)/n.
template <typename T>
inline void SoftmaxCeGrad(const Mat<T>& probs, const std::vector<int>& labels,
                          Mat<T>& glogits) {
  glogits.Resize(probs.rows, probs.cols);
  const T inv_n = T(1) / static_cast<T>(probs.rows);
  for (int i = 0; i < probs.rows; ++i) {
    const T* pr = probs.Row(i);
    T* gr = glogits.Row(i);
    for (int k = 0; k < probs.cols; ++k) gr[k] = pr[k] * inv_n;
    gr[labels[static_cast<size_t>(i)]] -= inv_n;
  }
}

}  // namespace cqser

#endif  // CQSER_NN_LAYERS_H_
