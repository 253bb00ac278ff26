// cqser/tools/cmd_experiments.cc

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

// Experiment subcommands: train, eval (LOSO), sweep, cross.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <mutex>

#include "json.hpp"

#include "cli_opts.h"
#include "commands.h"
#include "cqser/util/hash.h"
#include "cqser/util/parallel.h"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace cqser::cli {

namespace {

std::function<void(const std::string&)> MakeLogger(bool verbose) {
  if (!verbose) return nullptr;
  static std::mutex mu;
  return [](const std::string& line) {
    std::lock_guard<std::mutex> lock(mu);
    std::cerr << line << "\n";
  };
}

ordered_json ReportJson(const EvalReport& report) {
  return ordered_json::parse(ReportToJson(report, 0));
}

void WriteTextFile(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

ordered_json SummaryJson(const std::vector<double>& acc,
                         const std::vector<double>& uar) {
  const MeanStd a = ComputeMeanStd(acc);
  const MeanStd u = ComputeMeanStd(uar);
  return ordered_json{{"accuracy", {{"mean", a.mean}, {"std", a.std}}},
                      {"uar", {{"mean", u.mean}, {"std", u.std}}}};
}

uint64_t FileContentHash(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  return Fnv1a64(bytes);
}

}  // namespace

void RegisterTrain(CLI::App& app) {
  auto cmd = app.add_subcommand(
      "train", "Train one model with held-out-speaker validation");
  struct Opts {
    std::string manifest;
    std::string model_out;
    std::string log_out;
    std::vector<std::string> val_speakers;
    bool verbose = false;
    bool json = false;
    FeatureCli feature;
    TrainCli train;
  };
  auto o = std::make_shared<Opts>();
  cmd->add_option("--manifest", o->manifest, "Corpus manifest CSV")->required();
  cmd->add_option("--model-out", o->model_out, "Checkpoint output path")
      ->required();
  cmd->add_option("--log-out", o->log_out,
                  "Training log (JSON lines: epoch, train_loss, val_uar)");
  cmd->add_option("--val-speakers", o->val_speakers,
                  "Validation speakers (default: seeded 20% slice)")
      ->delimiter(',');
  cmd->add_flag("--verbose", o->verbose, "Progress to stderr");
  cmd->add_flag("--json", o->json, "Machine-readable output");
  o->feature.Register(cmd);
  o->train.Register(cmd);
  cmd->callback([o] {
    const FeatureConfig feat = o->feature.Resolve();
    const Manifest man = LoadManifest(o->manifest);
    const auto seeds = o->train.RunSeeds();
    const bool multi = seeds.size() > 1;

    ordered_json runs = ordered_json::array();
    std::vector<double> uars;
    for (uint64_t seed : seeds) {
      const TrainConfig tcfg = o->train.Resolve(seed);
      const AugmentParams aug = o->train.ResolveAugment(seed);
      HarnessOptions opts;
      opts.config_hash = ConfigHash(feat, tcfg, aug);
      opts.log = MakeLogger(o->verbose);
      const TrainRunResult r =
          RunTraining(man, feat, tcfg, aug, o->val_speakers, opts);

      const std::string suffix = multi ? "." + std::to_string(seed) : "";
      SaveCheckpoint(r.checkpoint, o->model_out + suffix);
      if (!o->log_out.empty()) {
        std::string log;
        for (const auto& e : r.epochs) {
          ordered_json line{{"epoch", e.epoch},
                            {"train_loss", e.train_loss},
                            {"val_uar", e.val_uar}};
          log += line.dump() + "\n";
        }
        WriteTextFile(o->log_out + suffix, log);
      }
      runs.push_back(ordered_json{{"seed", seed},
                                  {"model", o->model_out + suffix},
                                  {"best_epoch", r.checkpoint.epoch},
                                  {"val_uar", r.checkpoint.val_uar},
                                  {"val_speakers", r.val_speakers}});
      uars.push_back(r.checkpoint.val_uar);
    }

    const MeanStd u = ComputeMeanStd(uars);
    if (o->json) {
      ordered_json j{{"runs", runs},
                     {"val_uar", {{"mean", u.mean}, {"std", u.std}}}};
      std::cout << j.dump(2) << "\n";
    } else {
      for (const auto& r : runs)
        std::cout << "seed " << r["seed"] << ": best epoch " << r["best_epoch"]
                  << ", val UAR " << r["val_uar"] << " -> " << r["model"]
                  << "\n";
      if (multi)
        std::cout << "val UAR mean " << u.mean << " +/- " << u.std << "\n";
    }
  });
}

void RegisterEval(CLI::App& app) {
  auto cmd = app.add_subcommand(
      "eval", "Leave-one-speaker-out evaluation on one corpus");
  struct Opts {
    std::string manifest;
    std::string report_out;
    std::string confusion_out;
    int n_val = 2;
    bool verbose = false;
    bool json = false;
    FeatureCli feature;
    TrainCli train;
  };
  auto o = std::make_shared<Opts>();
  cmd->add_option("--manifest", o->manifest, "Corpus manifest CSV")->required();
  cmd->add_option("--report", o->report_out, "Aggregated JSON report path");
  cmd->add_option("--confusion", o->confusion_out,
                  "Aggregated confusion matrix CSV (first seed)");
  cmd->add_option("--n-val", o->n_val, "Validation speakers per fold");
  cmd->add_flag("--verbose", o->verbose, "Progress to stderr");
  cmd->add_flag("--json", o->json, "Machine-readable output");
  o->feature.Register(cmd);
  o->train.Register(cmd);
  cmd->callback([o] {
    const FeatureConfig feat = o->feature.Resolve();
    const Manifest man = LoadManifest(o->manifest);
    const SplitPlan plan = MakeLosoPlan(man.Speakers(), o->n_val);
    const auto seeds = o->train.RunSeeds();

    ordered_json runs = ordered_json::array();
    std::vector<double> accs, uars;
    bool wrote_confusion = false;
    for (uint64_t seed : seeds) {
      const TrainConfig tcfg = o->train.Resolve(seed);
      const AugmentParams aug = o->train.ResolveAugment(seed);
      HarnessOptions opts;
      opts.config_hash = ConfigHash(feat, tcfg, aug);
      opts.log = MakeLogger(o->verbose);
      const LosoResult r = RunLoso(man, feat, tcfg, aug, plan, opts);

      ordered_json folds = ordered_json::array();
      for (const auto& fr : r.folds)
        folds.push_back(ordered_json{
            {"fold", fr.fold_index},
            {"test_speaker", fr.test_speaker},
            {"best_epoch", fr.best_epoch},
            {"best_val_uar", fr.best_val_uar},
            {"accuracy", fr.report.accuracy},
            {"uar", fr.report.uar}});
      runs.push_back(ordered_json{{"seed", seed},
                                  {"folds", folds},
                                  {"aggregate", ReportJson(r.aggregate)}});
      accs.push_back(r.aggregate.accuracy);
      uars.push_back(r.aggregate.uar);
      if (!o->confusion_out.empty() && !wrote_confusion) {
        WriteConfusionCsv(r.aggregate.confusion, o->confusion_out);
        wrote_confusion = true;
      }
    }

    ordered_json j{{"runs", runs}, {"summary", SummaryJson(accs, uars)}};
    const std::string dump = j.dump(2) + "\n";
    if (!o->report_out.empty()) WriteTextFile(o->report_out, dump);
    if (o->json) {
      std::cout << dump;
    } else {
      for (size_t i = 0; i < seeds.size(); ++i)
        std::cout << "seed " << seeds[i] << ": accuracy " << accs[i]
                  << ", uar " << uars[i] << "\n";
      const MeanStd a = ComputeMeanStd(accs);
      const MeanStd u = ComputeMeanStd(uars);
      std::cout << "accuracy mean " << a.mean << " +/- " << a.std
                << "; uar mean " << u.mean << " +/- " << u.std << "\n";
    }
  });
}

void RegisterSweep(CLI::App& app) {
  auto cmd = app.add_subcommand(
      "sweep", "LOSO over a (bins-per-octave x hop) CQT grid");
  struct Opts {
    std::string manifest;
    std::string out;
    std::string cache;
    std::vector<int> bins;
    std::vector<int> hops;
    int n_val = 2;
    int jobs = 1;
    bool verbose = false;
    bool json = false;
    FeatureCli feature;
    TrainCli train;
  };
  auto o = std::make_shared<Opts>();
  cmd->add_option("--manifest", o->manifest, "Corpus manifest CSV")->required();
  cmd->add_option("--out", o->out, "Sweep table CSV path")->required();
  cmd->add_option("--cache", o->cache,
                  "Cache directory (completed grid points are reused)");
  cmd->add_option("--bins", o->bins, "bins-per-octave values")
      ->required()
      ->delimiter(',');
  cmd->add_option("--hops", o->hops, "hop length values")
      ->required()
      ->delimiter(',');
  cmd->add_option("--n-val", o->n_val, "Validation speakers per fold");
  cmd->add_option("--jobs", o->jobs, "Grid points run in parallel")
      ->envname("CQSER_JOBS");
  cmd->add_flag("--verbose", o->verbose, "Progress to stderr");
  cmd->add_flag("--json", o->json, "Machine-readable output");
  o->feature.Register(cmd);
  o->train.Register(cmd);
  cmd->callback([o] {
    const Manifest man = LoadManifest(o->manifest);
    const uint64_t corpus_hash = FileContentHash(o->manifest);
    const SplitPlan plan = MakeLosoPlan(man.Speakers(), o->n_val);
    if (!o->cache.empty()) fs::create_directories(o->cache);

    std::vector<std::pair<int, int>> grid;
    {
      std::vector<int> bins = o->bins, hops = o->hops;
      std::sort(bins.begin(), bins.end());
      bins.erase(std::unique(bins.begin(), bins.end()), bins.end());
      std::sort(hops.begin(), hops.end());
      hops.erase(std::unique(hops.begin(), hops.end()), hops.end());
      for (int b : bins)
        for (int h : hops) grid.emplace_back(b, h);
    }

    struct Row {
      int bins = 0, hop = 0;
      double accuracy = 0.0, uar = 0.0;
    };
    std::vector<Row> rows(grid.size());
    const auto log = MakeLogger(o->verbose);
    ParallelFor(grid.size(), o->jobs, [&](size_t i) {
      const auto [b, h] = grid[i];
      FeatureCli fc = o->feature;
      fc.kind = "cqt";
      fc.preset.clear();
      fc.bins_per_octave = b;
      fc.hop = h;
      // Resolve() consults option pointers from the parsed command; the
      // grid values must win here.
      fc.kind_opt = fc.bins_opt = fc.hop_opt = fc.filters_opt = nullptr;
      const FeatureConfig feat = fc.Resolve();
      const TrainConfig tcfg = o->train.Resolve(o->train.seed);
      const AugmentParams aug = o->train.ResolveAugment(o->train.seed);
      uint64_t key = Fnv1a64(ConfigHash(feat, tcfg, aug));
      key = HashCombine(key, corpus_hash);
      key = HashCombine(key, static_cast<uint64_t>(o->n_val));
      key = HashCombine(key, tcfg.seed);
      const std::string cache_file =
          o->cache.empty() ? ""
                           : (fs::path(o->cache) / (HexHash(key) + ".json"))
                                 .string();

      if (!cache_file.empty() && fs::exists(cache_file)) {
        std::ifstream in(cache_file);
        ordered_json j = ordered_json::parse(in);
        rows[i] = {j["bins_per_octave"], j["hop"], j["accuracy"], j["uar"]};
        if (log) log("sweep: cached " + std::to_string(b) + "x" +
                     std::to_string(h));
        return;
      }
      HarnessOptions opts;
      opts.config_hash = ConfigHash(feat, tcfg, aug);
      opts.log = log;
      const LosoResult r = RunLoso(man, feat, tcfg, aug, plan, opts);
      rows[i] = {b, h, r.aggregate.accuracy, r.aggregate.uar};
      if (!cache_file.empty()) {
        ordered_json j{{"bins_per_octave", b},
                       {"hop", h},
                       {"accuracy", r.aggregate.accuracy},
                       {"uar", r.aggregate.uar}};
        WriteTextFile(cache_file, j.dump(2) + "\n");
      }
    });

    std::string table = "bins_per_octave,hop,accuracy,uar\n";
    for (const auto& r : rows) {
      char line[128];
      std::snprintf(line, sizeof(line), "%d,%d,%.6f,%.6f\n", r.bins, r.hop,
                    r.accuracy, r.uar);
      table += line;
    }
    WriteTextFile(o->out, table);
    if (o->json) {
      ordered_json j{{"out", o->out}, {"points", rows.size()}};
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << table;
    }
  });
}

void RegisterCross(CLI::App& app) {
  auto cmd = app.add_subcommand(
      "cross", "Train on one corpus, test on another (4 shared emotions)");
  struct Opts {
    std::string train_manifest;
    std::string test_manifest;
    std::string alias;
    std::string report_out;
    bool verbose = false;
    bool json = false;
    FeatureCli feature;
    TrainCli train;
  };
  auto o = std::make_shared<Opts>();
  cmd->add_option("--train-manifest", o->train_manifest,
                  "Training corpus manifest")
      ->required();
  cmd->add_option("--test-manifest", o->test_manifest, "Test corpus manifest")
      ->required();
  cmd->add_option("--alias", o->alias,
                  "Label alias CSV (raw_label,canonical_label)");
  cmd->add_option("--report", o->report_out, "JSON report path");
  cmd->add_flag("--verbose", o->verbose, "Progress to stderr");
  cmd->add_flag("--json", o->json, "Machine-readable output");
  o->feature.Register(cmd);
  o->train.Register(cmd);
  cmd->callback([o] {
    const FeatureConfig feat = o->feature.Resolve();
    const Manifest train_man = LoadManifest(o->train_manifest);
    const Manifest test_man = LoadManifest(o->test_manifest);
    const LabelAliasMap aliases = o->alias.empty()
                                      ? LabelAliasMap()
                                      : LabelAliasMap::FromCsv(o->alias);
    const auto seeds = o->train.RunSeeds();

    ordered_json runs = ordered_json::array();
    std::vector<double> accs, uars;
    std::string pair_name;
    for (uint64_t seed : seeds) {
      const TrainConfig tcfg = o->train.Resolve(seed);
      const AugmentParams aug = o->train.ResolveAugment(seed);
      HarnessOptions opts;
      opts.config_hash = ConfigHash(feat, tcfg, aug);
      opts.log = MakeLogger(o->verbose);
      const CrossCorpusResult r = RunCrossCorpus(
          train_man, test_man, feat, tcfg, aug, aliases, opts);
      pair_name = train_man.corpus_id + "->" + test_man.corpus_id;
      runs.push_back(ordered_json{{"seed", seed},
                                  {"best_epoch", r.best_epoch},
                                  {"best_val_uar", r.best_val_uar},
                                  {"val_speakers", r.val_speakers},
                                  {"accuracy_uar", FormatAccuracyUar(r.report)},
                                  {"report", ReportJson(r.report)}});
      accs.push_back(r.report.accuracy);
      uars.push_back(r.report.uar);
      std::cout << pair_name << " seed " << seed << ": "
                << FormatAccuracyUar(r.report) << "\n";
    }
    if (seeds.size() > 1) {
      const MeanStd a = ComputeMeanStd(accs);
      const MeanStd u = ComputeMeanStd(uars);
      char line[160];
      std::snprintf(line, sizeof(line),
                    "%s mean: %.2f +/- %.2f / %.2f +/- %.2f\n",
                    pair_name.c_str(), a.mean, a.std, u.mean, u.std);
      std::cout << line;
    }
    ordered_json j{{"pair", pair_name},
                   {"runs", runs},
                   {"summary", SummaryJson(accs, uars)}};
    const std::string dump = j.dump(2) + "\n";
    if (!o->report_out.empty()) WriteTextFile(o->report_out, dump);
    if (o->json) std::cout << dump;
  });
}

}  // namespace cqser::cli
