// cqser/nn/model.h

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

#ifndef CQSER_NN_MODEL_H_
#define CQSER_NN_MODEL_H_

#include <string>
#include <vector>

#include "cqser/nn/layers.h"
#include "cqser/util/hash.h"

namespace cqser {

// The dilated 1-D convolutional classifier:
//   conv 32x5 d1 | conv 32x3 d2 | conv 32x3 d3 | conv 64x1 d1
//   (each followed by ReLU then batch norm)
//   statistics pooling (mean+sd) -> 128
//   fully connected 128 -> 64, ReLU, dropout 0.3
//   output 64 -> K, softmax
// Receptive field: 1 + 4 + 4 + 6 = 15 frames.
template <typename T>
class TdnnModel {
 public:
  static constexpr int kNumConv = 4;
  static constexpr int kReceptiveField = 15;

  TdnnModel(int in_bins, int n_classes, T dropout_p = T(0.3))
      : in_bins_(in_bins), n_classes_(n_classes) {
    if (in_bins < 1 || n_classes < 2)
      throw std::runtime_error("tdnn: need in_bins >= 1 and n_classes >= 2");
    const int out_c[kNumConv] = {32, 32, 32, 64};
    const int kern[kNumConv] = {5, 3, 3, 1};
    const int dil[kNumConv] = {1, 2, 3, 1};
    int prev = in_bins;
    for (int l = 0; l < kNumConv; ++l) {
      conv_[l].Configure(prev, out_c[l], kern[l], dil[l]);
      bn_[l].Configure(out_c[l]);
      prev = out_c[l];
    }
    fc_.Configure(2 * prev, 64);
    out_.Configure(64, n_classes);
    dropout_.p = dropout_p;
  }

  int in_bins() const { return in_bins_; }
  int n_classes() const { return n_classes_; }

  void Init(Rng& rng) {
    for (int l = 0; l < kNumConv; ++l) conv_[l].Init(rng);
    fc_.Init(rng);
    out_.Init(rng);
  }

  // Forward pass; caches everything Backward() needs when train=true.
  // rng supplies dropout decisions and must be non-null in train mode.
  const Mat<T>& Forward(const Tensor3<T>& x, bool train, Rng* rng = nullptr) {
    if (x.c != in_bins_)
      throw std::runtime_error("tdnn: input has " + std::to_string(x.c) +
                               " bins, model expects " +
                               std::to_string(in_bins_));
    if (x.t < kReceptiveField)
      throw std::runtime_error("tdnn: input of " + std::to_string(x.t) +
                               " frames is shorter than the receptive field (" +
                               std::to_string(kReceptiveField) + ")");
    if (train && rng == nullptr)
      throw std::runtime_error("tdnn: train-mode forward needs an rng");
    input_ = &x;
    const Tensor3<T>* cur = &x;
    for (int l = 0; l < kNumConv; ++l) {
      conv_[l].Forward(*cur, z_[l]);
      r_[l] = z_[l];
      for (auto& v : r_[l].d) v = std::max(v, T(0));
      bn_[l].Forward(r_[l], a_[l], train);
      cur = &a_[l];
    }
    pool_.Forward(*cur, pooled_);
    fc_.Forward(pooled_, fc_z_);
    fc_r_ = fc_z_;
    for (auto& v : fc_r_.d) v = std::max(v, T(0));
    dropout_.Forward(fc_r_, fc_d_, train, rng);
    out_.Forward(fc_d_, logits_);
    Softmax(logits_, probs_);
    return probs_;
  }

  // Backward from the mean cross-entropy loss; gradients accumulate into
  // the layers' grad buffers (call ZeroGrads() before a fresh batch).
  void Backward(const std::vector<int>& labels) {
    SoftmaxCeGrad(probs_, labels, glogits_);
    out_.Backward(fc_d_, glogits_, g_fc_d_);
    dropout_.Backward(g_fc_d_, g_fc_r_);
    g_fc_z_.Resize(g_fc_r_.rows, g_fc_r_.cols);
    for (size_t i = 0; i < g_fc_r_.d.size(); ++i)
      g_fc_z_.d[i] = fc_z_.d[i] > T(0) ? g_fc_r_.d[i] : T(0);
    fc_.Backward(pooled_, g_fc_z_, g_pooled_);
    pool_.Backward(a_[kNumConv - 1], g_pooled_, ga_);
    for (int l = kNumConv - 1; l >= 0; --l) {
      bn_[l].Backward(ga_, gr_);
      for (size_t i = 0; i < gr_.d.size(); ++i)
        if (z_[l].d[i] <= T(0)) gr_.d[i] = T(0);
      const Tensor3<T>& layer_in = l == 0 ? *input_ : a_[l - 1];
      conv_[l].Backward(layer_in, gr_, ga_);
    }
  }

  void ZeroGrads() {
    for (auto& p : TrainableParams())
      for (size_t i = 0; i < p.size; ++i) p.grad[i] = T(0);
  }

  std::vector<ParamRef<T>> TrainableParams() {
    std::vector<ParamRef<T>> ps;
    for (int l = 0; l < kNumConv; ++l) {
      const std::string tag = "conv" + std::to_string(l + 1);
      ps.push_back({tag + ".w", conv_[l].w.data(), conv_[l].gw.data(),
                    conv_[l].w.size()});
      ps.push_back({tag + ".b", conv_[l].b.data(), conv_[l].gb.data(),
                    conv_[l].b.size()});
      const std::string bn = "bn" + std::to_string(l + 1);
      ps.push_back({bn + ".gamma", bn_[l].gamma.data(), bn_[l].ggamma.data(),
                    bn_[l].gamma.size()});
      ps.push_back({bn + ".beta", bn_[l].beta.data(), bn_[l].gbeta.data(),
                    bn_[l].beta.size()});
    }
    ps.push_back({"fc.w", fc_.w.data(), fc_.gw.data(), fc_.w.size()});
    ps.push_back({"fc.b", fc_.b.data(), fc_.gb.data(), fc_.b.size()});
    ps.push_back({"out.w", out_.w.data(), out_.gw.data(), out_.w.size()});
    ps.push_back({"out.b", out_.b.data(), out_.gb.data(), out_.b.size()});
    return ps;
  }

  // Trainable parameters plus running BN statistics, in declaration order;
  // this is the checkpoint payload.
  std::vector<ParamRef<T>> StateTensors() {
    auto ps = TrainableParams();
    for (int l = 0; l < kNumConv; ++l) {
      const std::string bn = "bn" + std::to_string(l + 1);
      ps.push_back({bn + ".run_mean", bn_[l].run_mean.data(), nullptr,
                    bn_[l].run_mean.size()});
      ps.push_back({bn + ".run_var", bn_[l].run_var.data(), nullptr,
                    bn_[l].run_var.size()});
    }
    return ps;
  }

  uint64_t ArchHash() const {
    uint64_t h = Fnv1a64("tdnn-32.5.1-32.3.2-32.3.3-64.1.1-pool-fc64");
    h = HashCombine(h, static_cast<uint64_t>(in_bins_));
    h = HashCombine(h, static_cast<uint64_t>(n_classes_));
    return h;
  }

  const Mat<T>& probs() const { return probs_; }

 private:
  int in_bins_;
  int n_classes_;
  Conv1d<T> conv_[kNumConv];
  BatchNorm1d<T> bn_[kNumConv];
  StatsPool<T> pool_;
  Dense<T> fc_;
  Dense<T> out_;
  Dropout<T> dropout_;

  // forward caches
  const Tensor3<T>* input_ = nullptr;
  Tensor3<T> z_[kNumConv];  // conv outputs (pre-ReLU)
  Tensor3<T> r_[kNumConv];  // post-ReLU
  Tensor3<T> a_[kNumConv];  // post-BN
  Mat<T> pooled_, fc_z_, fc_r_, fc_d_, logits_, probs_;

  // backward scratch
  Mat<T> glogits_, g_fc_d_, g_fc_r_, g_fc_z_, g_pooled_;
  Tensor3<T> ga_, gr_;
};

}  // namespace cqser

#endif  // CQSER_NN_MODEL_H_
