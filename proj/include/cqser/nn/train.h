// cqser/nn/train.h

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

#ifndef CQSER_NN_TRAIN_H_
#define CQSER_NN_TRAIN_H_

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "cqser/dsp/tfm.h"
#include "cqser/feat/pipeline.h"
#include "cqser/nn/model.h"

namespace cqser {

struct TrainConfig {
  double lr = 0.001;
  int batch_size = 64;
  int epochs = 50;
  uint64_t seed = 0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double adam_eps = 1e-8;
  double dropout_p = 0.3;

  void Validate() const;
};

// A full utterance with its label (validation / test material).
struct LabeledFeatures {
  TimeFreqMatrix features;
  int label = -1;
  std::string utterance_id;
};

// Serialized model state plus selection metadata.
struct Checkpoint {
  uint64_t arch_hash = 0;
  int in_bins = 0;
  int n_classes = 0;
  int epoch = 0;          // 1-based epoch that achieved val_uar
  double val_uar = 0.0;
  std::array<uint64_t, 8> rng_state{};  // shuffle + dropout generator words
  std::vector<std::vector<float>> tensors;  // declaration order
};

Checkpoint CheckpointFromModel(TdnnModel<float>& model, int epoch,
                               double val_uar,
                               const std::array<uint64_t, 8>& rng_state);
TdnnModel<float> RestoreModel(const Checkpoint& ckpt, double dropout_p = 0.3);

// Versioned little-endian binary: magic, arch hash, dims, metadata, then
// 32-bit float tensors in declaration order.
void SaveCheckpoint(const Checkpoint& ckpt, const std::string& path);
Checkpoint LoadCheckpoint(const std::string& path);

struct EpochLog {
  int epoch = 0;
  double train_loss = 0.0;
  double val_uar = 0.0;
};
using EpochLogger = std::function<void(const EpochLog&)>;

// Minibatch cross-entropy training with Adam. The model is (re)initialized
// from cfg.seed, so identical inputs and seed give a bit-identical
// checkpoint. After every epoch the validation UAR is computed on full
// utterances (eval mode, no chunking); the returned checkpoint is the
// epoch with the highest validation UAR. Throws on a non-finite loss.
Checkpoint Train(TdnnModel<float>& model,
                 const std::vector<FeatureChunk>& train_chunks,
                 const std::vector<LabeledFeatures>& val_utterances,
                 const TrainConfig& cfg, const EpochLogger& logger = nullptr);

// Eval-mode forward over a whole utterance; inputs shorter than the
// receptive field are cyclically padded up to it. Ties break toward the
// lowest class index.
struct Prediction {
  int label = 0;
  std::vector<double> probs;
};
Prediction PredictUtterance(TdnnModel<float>& model,
                            const TimeFreqMatrix& features);

// Mean recall over the classes that appear in `labels` (validation-time
// UAR; the strict metric lives in eval/metrics.h).
double PresentClassUar(const std::vector<int>& labels,
                       const std::vector<int>& preds, int n_classes);

}  // namespace cqser

#endif  // CQSER_NN_TRAIN_H_
