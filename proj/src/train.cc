// cqser/src/train.cc

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

#include "cqser/nn/train.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include "cqser/nn/adam.h"

namespace cqser {

void TrainConfig::Validate() const {
  if (!(lr > 0.0)) throw std::runtime_error("train: lr must be positive");
  if (batch_size < 1) throw std::runtime_error("train: batch_size must be >= 1");
  if (epochs < 1) throw std::runtime_error("train: epochs must be >= 1");
  if (dropout_p < 0.0 || dropout_p >= 1.0)
    throw std::runtime_error("train: dropout_p must be in [0, 1)");
}

Checkpoint CheckpointFromModel(TdnnModel<float>& model, int epoch,
                               double val_uar,
                               const std::array<uint64_t, 8>& rng_state) {
  Checkpoint ckpt;
  ckpt.arch_hash = model.ArchHash();
  ckpt.in_bins = model.in_bins();
  ckpt.n_classes = model.n_classes();
  ckpt.epoch = epoch;
  ckpt.val_uar = val_uar;
  ckpt.rng_state = rng_state;
  for (const auto& p : model.StateTensors())
    ckpt.tensors.emplace_back(p.data, p.data + p.size);
  return ckpt;
}

TdnnModel<float> RestoreModel(const Checkpoint& ckpt, double dropout_p) {
  TdnnModel<float> model(ckpt.in_bins, ckpt.n_classes,
                         static_cast<float>(dropout_p));
  if (model.ArchHash() != ckpt.arch_hash)
    throw std::runtime_error("checkpoint: architecture hash mismatch");
  auto tensors = model.StateTensors();
  if (tensors.size() != ckpt.tensors.size())
    throw std::runtime_error("checkpoint: tensor count mismatch");
  for (size_t i = 0; i < tensors.size(); ++i) {
    if (tensors[i].size != ckpt.tensors[i].size())
      throw std::runtime_error("checkpoint: size mismatch in " +
                               tensors[i].name);
    std::copy(ckpt.tensors[i].begin(), ckpt.tensors[i].end(),
              tensors[i].data);
  }
  return model;
}

namespace {

constexpr char kCkptMagic[4] = {'C', 'Q', 'C', 'K'};
constexpr uint32_t kCkptVersion = 1;

template <typename T>
void PutRaw(std::ofstream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T GetRaw(std::ifstream& in, const std::string& path) {
  T v;
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw std::runtime_error("checkpoint " + path + ": truncated");
  return v;
}

}  // namespace

void SaveCheckpoint(const Checkpoint& ckpt, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("checkpoint " + path + ": cannot open");
  out.write(kCkptMagic, 4);
  PutRaw<uint32_t>(out, kCkptVersion);
  PutRaw<uint64_t>(out, ckpt.arch_hash);
  PutRaw<uint32_t>(out, static_cast<uint32_t>(ckpt.in_bins));
  PutRaw<uint32_t>(out, static_cast<uint32_t>(ckpt.n_classes));
  PutRaw<uint32_t>(out, static_cast<uint32_t>(ckpt.epoch));
  PutRaw<double>(out, ckpt.val_uar);
  for (uint64_t w : ckpt.rng_state) PutRaw<uint64_t>(out, w);
  PutRaw<uint32_t>(out, static_cast<uint32_t>(ckpt.tensors.size()));
  for (const auto& t : ckpt.tensors) {
    PutRaw<uint32_t>(out, static_cast<uint32_t>(t.size()));
    out.write(reinterpret_cast<const char*>(t.data()),
              static_cast<std::streamsize>(t.size() * sizeof(float)));
  }
  if (!out) throw std::runtime_error("checkpoint " + path + ": write failed");
}

Checkpoint LoadCheckpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("checkpoint " + path + ": cannot open");
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kCkptMagic, 4) != 0)
    throw std::runtime_error("checkpoint " + path + ": bad magic");
  if (GetRaw<uint32_t>(in, path) != kCkptVersion)
    throw std::runtime_error("checkpoint " + path + ": unsupported version");
  Checkpoint ckpt;
  ckpt.arch_hash = GetRaw<uint64_t>(in, path);
  ckpt.in_bins = static_cast<int>(GetRaw<uint32_t>(in, path));
  ckpt.n_classes = static_cast<int>(GetRaw<uint32_t>(in, path));
  ckpt.epoch = static_cast<int>(GetRaw<uint32_t>(in, path));
  ckpt.val_uar = GetRaw<double>(in, path);
  for (auto& w : ckpt.rng_state) w = GetRaw<uint64_t>(in, path);
  const uint32_t n_tensors = GetRaw<uint32_t>(in, path);
  ckpt.tensors.resize(n_tensors);
  for (auto& t : ckpt.tensors) {
    t.resize(GetRaw<uint32_t>(in, path));
    in.read(reinterpret_cast<char*>(t.data()),
            static_cast<std::streamsize>(t.size() * sizeof(float)));
    if (!in) throw std::runtime_error("checkpoint " + path + ": truncated");
  }
  return ckpt;
}

double PresentClassUar(const std::vector<int>& labels,
                       const std::vector<int>& preds, int n_classes) {
  std::vector<int64_t> total(static_cast<size_t>(n_classes), 0);
  std::vector<int64_t> correct(static_cast<size_t>(n_classes), 0);
  for (size_t i = 0; i < labels.size(); ++i) {
    ++total[static_cast<size_t>(labels[i])];
    if (preds[i] == labels[i]) ++correct[static_cast<size_t>(labels[i])];
  }
  double sum = 0.0;
  int present = 0;
  for (int k = 0; k < n_classes; ++k) {
    if (total[static_cast<size_t>(k)] == 0) continue;
    sum += static_cast<double>(correct[static_cast<size_t>(k)]) /
           total[static_cast<size_t>(k)];
    ++present;
  }
  if (present == 0) throw std::runtime_error("uar: no labeled samples");
  return sum / present;
}

namespace {

// Copies matrix columns into a [1, bins, t] tensor, cyclically padding up
// to min_frames.
Tensor3<float> TensorFromMatrix(const TimeFreqMatrix& m, int min_frames) {
  const int t_out = std::max(m.frames, min_frames);
  Tensor3<float> x;
  x.Resize(1, m.bins, t_out);
  for (int b = 0; b < m.bins; ++b) {
    const float* src = m.Row(b);
    float* dst = x.Row(0, b);
    for (int t = 0; t < t_out; ++t) dst[t] = src[t % m.frames];
  }
  return x;
}

}  // namespace

Prediction PredictUtterance(TdnnModel<float>& model,
                            const TimeFreqMatrix& features) {
  if (features.frames < 1)
    throw std::runtime_error("predict: empty feature matrix");
  const Tensor3<float> x =
      TensorFromMatrix(features, TdnnModel<float>::kReceptiveField);
  const Mat<float>& probs = model.Forward(x, /*train=*/false);
  Prediction pred;
  pred.probs.assign(probs.Row(0), probs.Row(0) + probs.cols);
  pred.label = 0;
  for (int k = 1; k < probs.cols; ++k)
    if (pred.probs[static_cast<size_t>(k)] >
        pred.probs[static_cast<size_t>(pred.label)])
      pred.label = k;
  return pred;
}

Checkpoint Train(TdnnModel<float>& model,
                 const std::vector<FeatureChunk>& train_chunks,
                 const std::vector<LabeledFeatures>& val_utterances,
                 const TrainConfig& cfg, const EpochLogger& logger) {
  cfg.Validate();
  if (train_chunks.empty())
    throw std::runtime_error("train: no training chunks");
  if (val_utterances.empty())
    throw std::runtime_error("train: no validation utterances");
  const int bins = model.in_bins();
  const int n_classes = model.n_classes();
  for (const auto& c : train_chunks) {
    if (c.bins != bins)
      throw std::runtime_error("train: chunk bin count mismatch");
    if (c.label < 0 || c.label >= n_classes)
      throw std::runtime_error("train: label outside the class set");
  }
  for (const auto& v : val_utterances)
    if (v.label < 0 || v.label >= n_classes)
      throw std::runtime_error("train: validation label outside the class set");

  Rng init_rng(DeriveSeed(cfg.seed, "init"));
  Rng shuffle_rng(DeriveSeed(cfg.seed, "shuffle"));
  Rng dropout_rng(DeriveSeed(cfg.seed, "dropout"));
  model.Init(init_rng);

  Adam<float> adam(model.TrainableParams(), cfg.lr, cfg.beta1, cfg.beta2,
                   cfg.adam_eps);

  std::vector<size_t> order(train_chunks.size());
  std::iota(order.begin(), order.end(), size_t{0});

  Checkpoint best;
  double best_uar = -1.0;
  Tensor3<float> batch;
  std::vector<int> labels;

  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    shuffle_rng.Shuffle(order);
    double loss_sum = 0.0;
    int n_batches = 0;
    for (size_t start = 0; start < order.size();
         start += static_cast<size_t>(cfg.batch_size)) {
      const size_t end =
          std::min(order.size(), start + static_cast<size_t>(cfg.batch_size));
      const int bs = static_cast<int>(end - start);
      const int chunk_len = train_chunks[order[start]].chunk_len;
      batch.Resize(bs, bins, chunk_len);
      labels.resize(static_cast<size_t>(bs));
      for (int i = 0; i < bs; ++i) {
        const FeatureChunk& c = train_chunks[order[start + i]];
        if (c.chunk_len != chunk_len)
          throw std::runtime_error("train: mixed chunk lengths in a batch");
        std::copy(c.values.begin(), c.values.end(), batch.Row(i, 0));
        labels[static_cast<size_t>(i)] = c.label;
      }
      const Mat<float>& probs = model.Forward(batch, /*train=*/true,
                                              &dropout_rng);
      const double loss = CrossEntropy(probs, labels);
      if (!std::isfinite(loss))
        throw std::runtime_error(
            "train: non-finite loss at epoch " + std::to_string(epoch) +
            ", batch " + std::to_string(n_batches) +
            " (training diverged; lower the learning rate)");
      loss_sum += loss;
      ++n_batches;
      model.ZeroGrads();
      model.Backward(labels);
      adam.Step(model.TrainableParams());
    }

    std::vector<int> val_labels, val_preds;
    val_labels.reserve(val_utterances.size());
    val_preds.reserve(val_utterances.size());
    for (const auto& v : val_utterances) {
      val_labels.push_back(v.label);
      val_preds.push_back(PredictUtterance(model, v.features).label);
    }
    const double uar = PresentClassUar(val_labels, val_preds, n_classes);
    const double train_loss = loss_sum / std::max(1, n_batches);
    if (logger) logger({epoch, train_loss, uar});
    if (uar > best_uar) {
      best_uar = uar;
      std::array<uint64_t, 8> rng_state{};
      const auto s1 = shuffle_rng.state();
      const auto s2 = dropout_rng.state();
      for (int i = 0; i < 4; ++i) {
        rng_state[static_cast<size_t>(i)] = s1[static_cast<size_t>(i)];
        rng_state[static_cast<size_t>(i + 4)] = s2[static_cast<size_t>(i)];
      }
      best = CheckpointFromModel(model, epoch, uar, rng_state);
    }
  }
  return best;
}

}  // namespace cqser
