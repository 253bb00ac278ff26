// cqser/eval/harness.h

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

#ifndef CQSER_EVAL_HARNESS_H_
#define CQSER_EVAL_HARNESS_H_

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "cqser/audio/manifest.h"
#include "cqser/eval/metrics.h"
#include "cqser/feat/config.h"
#include "cqser/nn/train.h"

namespace cqser {

// Leave-one-speaker-out split plan. Within a fold the three speaker sets
// are disjoint and cover all speakers; each speaker is tested exactly once.
struct SplitPlan {
  struct Fold {
    std::vector<std::string> test_speakers;
    std::vector<std::string> val_speakers;
    std::vector<std::string> train_speakers;
  };
  std::vector<Fold> folds;
};

// One fold per speaker (speakers sorted by id). Validation speakers are
// picked by round-robin over the remaining sorted speakers, offset by the
// fold index; the rest train. Requires >= 4 speakers and
// n_val <= speakers-2. The plan is deterministic; seed is recorded by
// callers in run metadata only.
SplitPlan MakeLosoPlan(const std::vector<std::string>& speakers, int n_val = 2,
                       uint64_t seed = 0);

struct AugmentParams {
  bool enabled = true;
  uint64_t seed = 0;
};

struct HarnessOptions {
  std::string config_hash;  // recorded in report metadata
  // Progress / skip messages; null silences them.
  std::function<void(const std::string&)> log;
};

struct FoldResult {
  int fold_index = 0;
  std::string test_speaker;
  int best_epoch = 0;
  double best_val_uar = 0.0;
  EvalReport report;
};

struct LosoResult {
  std::vector<FoldResult> folds;
  EvalReport aggregate;  // metrics over the summed confusion matrix
};

// The full per-fold protocol: 5-fold augmentation of the training
// speakers' utterances, feature extraction -> SAD -> CMVN, 100-frame
// chunking of training data, minibatch training with per-epoch validation
// UAR on full utterances, then full-utterance prediction of the held-out
// speaker. Augmented copies (id#aug<k>) exist only on the training side.
LosoResult RunLoso(const Manifest& manifest, const FeatureConfig& feature_cfg,
                   const TrainConfig& train_cfg, const AugmentParams& augment,
                   const SplitPlan& plan, const HarnessOptions& opts = {});

struct TrainRunResult {
  Checkpoint checkpoint;
  std::vector<EpochLog> epochs;
  std::vector<std::string> val_speakers;
};

// One training run over a manifest: hold out `val_speakers` (when empty, a
// seeded speaker-disjoint 20% slice) for per-epoch model selection, train
// on the rest with augmentation, return the best checkpoint and the
// training log.
TrainRunResult RunTraining(const Manifest& manifest,
                           const FeatureConfig& feature_cfg,
                           const TrainConfig& train_cfg,
                           const AugmentParams& augment,
                           std::vector<std::string> val_speakers = {},
                           const HarnessOptions& opts = {});

// Case-insensitive mapping of corpus labels onto the shared four-emotion
// set {angry, happy, sad, neutral}. A label may also map to "drop" to
// exclude its utterances. The four canonical names map to themselves.
class LabelAliasMap {
 public:
  LabelAliasMap();

  static const std::vector<std::string>& CanonicalLabels();

  void AddAlias(const std::string& raw, const std::string& canonical);
  // CSV with header raw_label,canonical_label.
  static LabelAliasMap FromCsv(const std::string& path);

  // Canonical label, "drop", or a thrown LabelMappingError.
  std::string Map(const std::string& raw_label) const;

  // Remaps every record; drops "drop" labels; label_set becomes the four
  // canonical emotions.
  Manifest Apply(const Manifest& manifest) const;

 private:
  std::map<std::string, std::string> aliases_;  // lower(raw) -> canonical
};

// Thrown for labels with no alias entry; the CLI maps it to exit code 2.
class LabelMappingError : public std::runtime_error {
 public:
  LabelMappingError(const std::string& label, const std::string& message)
      : std::runtime_error(message), label_(label) {}
  const std::string& label() const { return label_; }

 private:
  std::string label_;
};

struct CrossCorpusResult {
  EvalReport report;
  int best_epoch = 0;
  double best_val_uar = 0.0;
  std::vector<std::string> val_speakers;
};

// Trains on the full (augmented) training corpus with a speaker-disjoint
// 20% validation slice for model selection, then tests on the full test
// corpus. Both manifests are first mapped onto the four shared emotions.
CrossCorpusResult RunCrossCorpus(const Manifest& train_manifest,
                                 const Manifest& test_manifest,
                                 const FeatureConfig& feature_cfg,
                                 const TrainConfig& train_cfg,
                                 const AugmentParams& augment,
                                 const LabelAliasMap& aliases,
                                 const HarnessOptions& opts = {});

// "0.44 / 0.46" (accuracy / UAR, two decimals).
std::string FormatAccuracyUar(const EvalReport& report);

}  // namespace cqser

#endif  // CQSER_EVAL_HARNESS_H_
