// cqser/src/harness.cc

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

#include "cqser/eval/harness.h"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <memory>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "cqser/audio/resample.h"
#include "cqser/aug/augment.h"
#include "cqser/util/csv.h"
#include "cqser/util/hash.h"
#include "cqser/util/rng.h"

namespace cqser {

SplitPlan MakeLosoPlan(const std::vector<std::string>& speakers, int n_val,
                       uint64_t /*seed*/) {
  std::set<std::string> dedup(speakers.begin(), speakers.end());
  std::vector<std::string> sorted(dedup.begin(), dedup.end());
  const int s = static_cast<int>(sorted.size());
  if (s < 4)
    throw std::runtime_error("loso: need at least 4 speakers, got " +
                             std::to_string(s));
  if (n_val < 1 || n_val >= s - 1)
    throw std::runtime_error(
        "loso: n_val must be in [1, speakers-2]; got n_val=" +
        std::to_string(n_val) + " with " + std::to_string(s) + " speakers");

  SplitPlan plan;
  for (int f = 0; f < s; ++f) {
    SplitPlan::Fold fold;
    fold.test_speakers.push_back(sorted[static_cast<size_t>(f)]);
    std::vector<std::string> rest;
    for (int i = 0; i < s; ++i)
      if (i != f) rest.push_back(sorted[static_cast<size_t>(i)]);
    std::set<size_t> val_idx;
    for (int j = 0; j < n_val; ++j)
      val_idx.insert(static_cast<size_t>((f + j) % (s - 1)));
    for (size_t i = 0; i < rest.size(); ++i) {
      if (val_idx.count(i))
        fold.val_speakers.push_back(rest[i]);
      else
        fold.train_speakers.push_back(rest[i]);
    }
    plan.folds.push_back(std::move(fold));
  }
  return plan;
}

namespace {

// Loads, resamples and runs the feature pipeline once per distinct
// (utterance, corruption); identical corruptions requested by several
// folds are shared. A cached null marks an utterance the pipeline
// rejected (e.g. SAD removed every frame).
class UtteranceProcessor {
 public:
  UtteranceProcessor(const Manifest& manifest, const FeatureConfig& cfg,
                     std::function<void(const std::string&)> log)
      : cfg_(cfg), log_(std::move(log)) {
    for (const auto& r : manifest.records) records_[r.id] = &r;
  }

  const UtteranceRecord& Record(const std::string& id) const {
    auto it = records_.find(id);
    if (it == records_.end())
      throw std::runtime_error("harness: unknown utterance id `" + id + "`");
    return *it->second;
  }

  const AudioBuffer& Audio(const std::string& id) {
    auto it = audio_.find(id);
    if (it != audio_.end()) return it->second;
    AudioBuffer buf = ResampleTo16k(ReadWav(Record(id).audio_path));
    return audio_.emplace(id, std::move(buf)).first->second;
  }

  std::shared_ptr<const TimeFreqMatrix> Identity(const std::string& id) {
    return Cached("id=" + id, [&] { return Audio(id); });
  }

  std::shared_ptr<const TimeFreqMatrix> Augmented(
      const AugmentPlanEntry& entry,
      const std::vector<std::string>& fold_train_ids) {
    if (entry.spec.kind == AugmentKind::kIdentity)
      return Identity(entry.source_id);
    std::string key = "aug=" + entry.utterance_id + "|" +
                      AugmentKindName(entry.spec.kind) + "|" +
                      std::to_string(entry.spec.seed);
    std::vector<std::string> pool_ids;
    if (entry.spec.kind == AugmentKind::kBabble) {
      for (const auto& id : fold_train_ids)
        if (id != entry.source_id) pool_ids.push_back(id);
      std::sort(pool_ids.begin(), pool_ids.end());
      uint64_t fp = Fnv1a64("pool");
      for (const auto& id : pool_ids) fp = Fnv1a64(id, fp);
      key += "|pool=" + HexHash(fp);
    }
    return Cached(key, [&] {
      std::vector<AudioBuffer> pool;
      pool.reserve(pool_ids.size());
      for (const auto& id : pool_ids) pool.push_back(Audio(id));
      return ApplyAugment(Audio(entry.source_id), entry.spec, pool);
    });
  }

 private:
  std::shared_ptr<const TimeFreqMatrix> Cached(
      const std::string& key, const std::function<AudioBuffer()>& make) {
    auto it = features_.find(key);
    if (it != features_.end()) return it->second;
    std::shared_ptr<const TimeFreqMatrix> result;
    try {
      result = std::make_shared<TimeFreqMatrix>(
          ExtractPipeline(make(), cfg_));
    } catch (const std::exception& e) {
      if (log_) log_("skipping " + key + ": " + e.what());
      result = nullptr;
    }
    features_.emplace(key, result);
    return result;
  }

  const FeatureConfig& cfg_;
  std::function<void(const std::string&)> log_;
  std::unordered_map<std::string, const UtteranceRecord*> records_;
  std::unordered_map<std::string, AudioBuffer> audio_;
  std::unordered_map<std::string, std::shared_ptr<const TimeFreqMatrix>>
      features_;
};

std::vector<const UtteranceRecord*> RecordsForSpeakers(
    const Manifest& manifest, const std::vector<std::string>& speakers) {
  std::set<std::string> wanted(speakers.begin(), speakers.end());
  std::vector<const UtteranceRecord*> out;
  for (const auto& r : manifest.records)
    if (wanted.count(r.speaker_id)) out.push_back(&r);
  return out;
}

struct TrainedFold {
  TdnnModel<float> model;
  Checkpoint checkpoint;
};

// Shared train-then-select step for LOSO folds, cross-corpus training and
// single training runs.
TrainedFold TrainOnRecords(UtteranceProcessor& proc, const Manifest& manifest,
                           const std::vector<const UtteranceRecord*>& train_records,
                           const std::vector<const UtteranceRecord*>& val_records,
                           const FeatureConfig& feature_cfg,
                           const TrainConfig& train_cfg,
                           const AugmentParams& augment,
                           const std::string& context,
                           const std::function<void(const std::string&)>& log,
                           const EpochLogger& epoch_logger = nullptr) {
  std::vector<std::string> train_ids;
  train_ids.reserve(train_records.size());
  for (const auto* r : train_records) train_ids.push_back(r->id);
  if (train_ids.empty())
    throw std::runtime_error(context + ": empty training set");

  std::vector<AugmentPlanEntry> plan;
  if (augment.enabled) {
    plan = MakeAugmentPlan(train_ids, augment.seed);
  } else {
    for (const auto& id : train_ids) {
      AugmentPlanEntry e;
      e.utterance_id = id;
      e.source_id = id;
      e.spec.kind = AugmentKind::kIdentity;
      plan.push_back(std::move(e));
    }
  }

  std::vector<FeatureChunk> chunks;
  for (const auto& entry : plan) {
    auto feats = proc.Augmented(entry, train_ids);
    if (!feats) continue;
    const int label =
        manifest.LabelIndex(proc.Record(entry.source_id).emotion);
    auto cs = MakeChunks(*feats, feature_cfg.chunk_len, label,
                         entry.utterance_id);
    std::move(cs.begin(), cs.end(), std::back_inserter(chunks));
  }
  if (chunks.empty())
    throw std::runtime_error(context +
                             ": no usable training chunks after SAD");

  std::vector<LabeledFeatures> val;
  for (const auto* r : val_records) {
    auto feats = proc.Identity(r->id);
    if (!feats) continue;
    val.push_back({*feats, manifest.LabelIndex(r->emotion), r->id});
  }
  if (val.empty())
    throw std::runtime_error(context +
                             ": no usable validation utterances after SAD");

  TrainedFold result{
      TdnnModel<float>(chunks.front().bins,
                       static_cast<int>(manifest.label_set.size()),
                       static_cast<float>(train_cfg.dropout_p)),
      {}};
  EpochLogger combined = [&](const EpochLog& e) {
    if (log) {
      char line[160];
      std::snprintf(line, sizeof(line), "%s epoch %d loss %.4f val_uar %.4f",
                    context.c_str(), e.epoch, e.train_loss, e.val_uar);
      log(line);
    }
    if (epoch_logger) epoch_logger(e);
  };
  result.checkpoint = Train(result.model, chunks, val, train_cfg, combined);
  result.model = RestoreModel(result.checkpoint, train_cfg.dropout_p);
  return result;
}

// Seeded speaker-disjoint slice of roughly `fraction` of the speakers
// (at least one), used for validation when no explicit split is given.
std::vector<std::string> SelectValidationSpeakers(
    const std::vector<std::string>& sorted_speakers, double fraction,
    uint64_t seed) {
  const int n = static_cast<int>(sorted_speakers.size());
  const int n_val = std::max(
      1, static_cast<int>(std::llround(fraction * static_cast<double>(n))));
  if (n_val >= n)
    throw std::runtime_error(
        "harness: too few speakers for a validation slice");
  std::vector<std::string> shuffled = sorted_speakers;
  Rng rng(DeriveSeed(seed, "val-slice"));
  rng.Shuffle(shuffled);
  std::vector<std::string> val(shuffled.begin(), shuffled.begin() + n_val);
  std::sort(val.begin(), val.end());
  return val;
}

}  // namespace

LosoResult RunLoso(const Manifest& manifest, const FeatureConfig& feature_cfg,
                   const TrainConfig& train_cfg, const AugmentParams& augment,
                   const SplitPlan& plan, const HarnessOptions& opts) {
  feature_cfg.Validate();
  train_cfg.Validate();
  if (manifest.label_set.size() < 2)
    throw std::runtime_error("loso: need at least 2 emotion classes");

  UtteranceProcessor proc(manifest, feature_cfg, opts.log);
  LosoResult result;
  ConfusionMatrix total(manifest.label_set);

  for (size_t f = 0; f < plan.folds.size(); ++f) {
    const auto& fold = plan.folds[f];
    const std::string context = "fold " + std::to_string(f) + " (test " +
                                fold.test_speakers.front() + ")";
    const auto train_records = RecordsForSpeakers(manifest, fold.train_speakers);
    const auto val_records = RecordsForSpeakers(manifest, fold.val_speakers);
    const auto test_records = RecordsForSpeakers(manifest, fold.test_speakers);

    TrainConfig fold_cfg = train_cfg;
    fold_cfg.seed = DeriveSeed(train_cfg.seed, "fold", f);
    TrainedFold trained =
        TrainOnRecords(proc, manifest, train_records, val_records,
                       feature_cfg, fold_cfg, augment, context, opts.log);
    const int best_epoch = trained.checkpoint.epoch;
    const double best_val_uar = trained.checkpoint.val_uar;

    ConfusionMatrix cm(manifest.label_set);
    for (const auto* r : test_records) {
      auto feats = proc.Identity(r->id);
      if (!feats) continue;
      const Prediction pred = PredictUtterance(trained.model, *feats);
      cm.Add(manifest.LabelIndex(r->emotion), pred.label);
    }
    if (cm.Total() == 0)
      throw std::runtime_error(context +
                               ": empty test set after SAD failures");

    FoldResult fr;
    fr.fold_index = static_cast<int>(f);
    fr.test_speaker = fold.test_speakers.front();
    fr.best_epoch = best_epoch;
    fr.best_val_uar = best_val_uar;
    fr.report = BuildReport(
        cm, {opts.config_hash, train_cfg.seed,
             "fold" + std::to_string(f) + ":" + fold.test_speakers.front()});
    total += cm;
    result.folds.push_back(std::move(fr));
  }

  result.aggregate =
      BuildReport(total, {opts.config_hash, train_cfg.seed, "loso-aggregate"});
  return result;
}

namespace {

std::string ToLower(const std::string& s) {
  std::string out = s;
  for (char& c : out)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

const std::vector<std::string>& LabelAliasMap::CanonicalLabels() {
  static const std::vector<std::string> kLabels = {"angry", "happy", "sad",
                                                   "neutral"};
  return kLabels;
}

LabelAliasMap::LabelAliasMap() {
  for (const auto& l : CanonicalLabels()) aliases_[l] = l;
}

void LabelAliasMap::AddAlias(const std::string& raw,
                             const std::string& canonical) {
  const std::string canon = ToLower(canonical);
  const auto& labels = CanonicalLabels();
  if (canon != "drop" &&
      std::find(labels.begin(), labels.end(), canon) == labels.end())
    throw std::runtime_error("alias: `" + canonical +
                             "` is not a canonical emotion or `drop`");
  aliases_[ToLower(raw)] = canon;
}

LabelAliasMap LabelAliasMap::FromCsv(const std::string& path) {
  const CsvTable table = ReadCsv(path);
  const int raw_col = table.Column("raw_label");
  const int canon_col = table.Column("canonical_label");
  if (raw_col < 0 || canon_col < 0)
    throw std::runtime_error(
        "alias " + path + ": need columns raw_label,canonical_label");
  LabelAliasMap map;
  for (const auto& row : table.rows)
    map.AddAlias(row[static_cast<size_t>(raw_col)],
                 row[static_cast<size_t>(canon_col)]);
  return map;
}

std::string LabelAliasMap::Map(const std::string& raw_label) const {
  auto it = aliases_.find(ToLower(raw_label));
  if (it == aliases_.end())
    throw LabelMappingError(
        raw_label, "no alias entry for label `" + raw_label +
                       "`; add it to the alias table (or map it to `drop`)");
  return it->second;
}

Manifest LabelAliasMap::Apply(const Manifest& manifest) const {
  Manifest out;
  out.corpus_id = manifest.corpus_id;
  out.label_set = CanonicalLabels();
  for (const auto& r : manifest.records) {
    const std::string mapped = Map(r.emotion);
    if (mapped == "drop") continue;
    UtteranceRecord rec = r;
    rec.emotion = mapped;
    out.records.push_back(std::move(rec));
  }
  if (out.records.empty())
    throw std::runtime_error("alias mapping dropped every utterance of corpus " +
                             manifest.corpus_id);
  return out;
}

CrossCorpusResult RunCrossCorpus(const Manifest& train_manifest,
                                 const Manifest& test_manifest,
                                 const FeatureConfig& feature_cfg,
                                 const TrainConfig& train_cfg,
                                 const AugmentParams& augment,
                                 const LabelAliasMap& aliases,
                                 const HarnessOptions& opts) {
  feature_cfg.Validate();
  train_cfg.Validate();
  const Manifest train_man = aliases.Apply(train_manifest);
  const Manifest test_man = aliases.Apply(test_manifest);

  // Speaker-disjoint 20% validation slice, chosen by seeded shuffle.
  const std::vector<std::string> speakers = train_man.Speakers();
  const std::vector<std::string> val_speakers =
      SelectValidationSpeakers(speakers, 0.2, train_cfg.seed);
  std::vector<std::string> train_speakers;
  for (const auto& s : speakers)
    if (std::find(val_speakers.begin(), val_speakers.end(), s) ==
        val_speakers.end())
      train_speakers.push_back(s);

  UtteranceProcessor train_proc(train_man, feature_cfg, opts.log);
  const std::string context =
      "cross " + train_man.corpus_id + "->" + test_man.corpus_id;
  TrainedFold trained = TrainOnRecords(
      train_proc, train_man, RecordsForSpeakers(train_man, train_speakers),
      RecordsForSpeakers(train_man, val_speakers), feature_cfg, train_cfg,
      augment, context, opts.log);

  UtteranceProcessor test_proc(test_man, feature_cfg, opts.log);
  ConfusionMatrix cm(test_man.label_set);
  for (const auto& r : test_man.records) {
    auto feats = test_proc.Identity(r.id);
    if (!feats) continue;
    const Prediction pred = PredictUtterance(trained.model, *feats);
    cm.Add(test_man.LabelIndex(r.emotion), pred.label);
  }
  if (cm.Total() == 0)
    throw std::runtime_error(context + ": empty test set after SAD failures");

  CrossCorpusResult result;
  result.best_epoch = trained.checkpoint.epoch;
  result.best_val_uar = trained.checkpoint.val_uar;
  result.val_speakers = val_speakers;
  result.report = BuildReport(cm, {opts.config_hash, train_cfg.seed, context});
  return result;
}

TrainRunResult RunTraining(const Manifest& manifest,
                           const FeatureConfig& feature_cfg,
                           const TrainConfig& train_cfg,
                           const AugmentParams& augment,
                           std::vector<std::string> val_speakers,
                           const HarnessOptions& opts) {
  feature_cfg.Validate();
  train_cfg.Validate();
  if (manifest.label_set.size() < 2)
    throw std::runtime_error("train: need at least 2 emotion classes");
  const std::vector<std::string> speakers = manifest.Speakers();
  if (val_speakers.empty()) {
    val_speakers = SelectValidationSpeakers(speakers, 0.2, train_cfg.seed);
  } else {
    std::sort(val_speakers.begin(), val_speakers.end());
    for (const auto& v : val_speakers)
      if (std::find(speakers.begin(), speakers.end(), v) == speakers.end())
        throw std::runtime_error("train: validation speaker `" + v +
                                 "` is not in the manifest");
  }
  std::vector<std::string> train_speakers;
  for (const auto& s : speakers)
    if (std::find(val_speakers.begin(), val_speakers.end(), s) ==
        val_speakers.end())
      train_speakers.push_back(s);
  if (train_speakers.empty())
    throw std::runtime_error("train: every speaker is in the validation set");

  UtteranceProcessor proc(manifest, feature_cfg, opts.log);
  TrainRunResult result;
  TrainedFold trained = TrainOnRecords(
      proc, manifest, RecordsForSpeakers(manifest, train_speakers),
      RecordsForSpeakers(manifest, val_speakers), feature_cfg, train_cfg,
      augment, "train", opts.log,
      [&](const EpochLog& e) { result.epochs.push_back(e); });
  result.checkpoint = std::move(trained.checkpoint);
  result.val_speakers = val_speakers;
  return result;
}

std::string FormatAccuracyUar(const EvalReport& report) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f / %.2f", report.accuracy, report.uar);
  return buf;
}

}  // namespace cqser
