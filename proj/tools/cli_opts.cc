// cqser/tools/cli_opts.cc

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

#include "cli_opts.h"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "cqser/util/hash.h"

namespace cqser::cli {

void FeatureCli::Register(CLI::App* cmd) {
  kind_opt = cmd->add_option("--feature", kind,
                             "Feature kind: cqt, cqcc, mfsc or mfcc")
                 ->envname("CQSER_FEATURE");
  cmd->add_option("--preset", preset,
                  "cqt-optimized | mfsc-optimized | mfsc-baseline "
                  "(explicit flags win over the preset)");
  bins_opt = cmd->add_option("--bins-per-octave", bins_per_octave,
                             "CQT bins per octave");
  hop_opt = cmd->add_option("--hop", hop, "Hop length in samples");
  cmd->add_option("--fmin", f_min, "CQT minimum frequency, Hz");
  cmd->add_option("--fmax", f_max, "CQT maximum frequency, Hz (0 = Nyquist)");
  filters_opt = cmd->add_option("--n-filters", n_filters, "Mel filter count");
  cmd->add_option("--n-fft", n_fft, "STFT size for mel features");
  cmd->add_option("--n-ceps", n_ceps,
                  "Cepstral coefficients to keep (0 = all)");
  cmd->add_option("--chunk-len", chunk_len, "Training chunk length, frames");
  cmd->add_option("--sad-margin-db", sad_margin_db,
                  "SAD margin below the loudest frame, dB");
  cmd->add_option("--sad-floor-db", sad_floor_db, "SAD absolute floor, dBFS");
  cmd->add_option("--log-floor", log_floor, "Log-compression epsilon");
}

FeatureConfig FeatureCli::Resolve() const {
  FeatureCli r = *this;
  if (!preset.empty()) {
    const bool kind_set = kind_opt && kind_opt->count() > 0;
    const bool bins_set = bins_opt && bins_opt->count() > 0;
    const bool hop_set = hop_opt && hop_opt->count() > 0;
    const bool filters_set = filters_opt && filters_opt->count() > 0;
    if (preset == "cqt-optimized") {
      if (!kind_set) r.kind = "cqt";
      if (!bins_set) r.bins_per_octave = 3;
      if (!hop_set) r.hop = 64;
    } else if (preset == "mfsc-optimized") {
      if (!kind_set) r.kind = "mfsc";
      if (!filters_set) r.n_filters = 24;
      if (!hop_set) r.hop = 64;
    } else if (preset == "mfsc-baseline") {
      if (!kind_set) r.kind = "mfsc";
      if (!filters_set) r.n_filters = 128;
      if (!hop_set) r.hop = 160;
    } else {
      throw CLI::ValidationError("--preset", "unknown preset `" + preset + "`");
    }
  }
  FeatureConfig cfg;
  cfg.kind = ParseFeatureKind(r.kind);
  cfg.cqt.f_min = r.f_min;
  cfg.cqt.f_max = r.f_max;
  cfg.cqt.bins_per_octave = r.bins_per_octave;
  cfg.cqt.hop = r.hop;
  cfg.cqt.sample_rate = 16000;
  cfg.mel.n_fft = r.n_fft;
  cfg.mel.hop = r.hop;
  cfg.mel.n_filters = r.n_filters;
  cfg.mel.sample_rate = 16000;
  cfg.n_ceps = r.n_ceps;
  cfg.log_floor = r.log_floor;
  cfg.sad.margin_db = r.sad_margin_db;
  cfg.sad.floor_db = r.sad_floor_db;
  cfg.chunk_len = r.chunk_len;
  cfg.Validate();
  return cfg;
}

void TrainCli::Register(CLI::App* cmd) {
  cmd->add_option("--lr", lr, "Adam learning rate");
  cmd->add_option("--batch-size", batch_size, "Minibatch size");
  cmd->add_option("--epochs", epochs, "Training epochs")
      ->envname("CQSER_EPOCHS");
  cmd->add_option("--seed", seed, "Base RNG seed")->envname("CQSER_SEED");
  cmd->add_option("--seeds", seeds,
                  "Repeat the experiment with these seeds and report "
                  "mean +/- std")
      ->delimiter(',');
  cmd->add_option("--dropout", dropout, "Dropout probability on the FC layer");
  cmd->add_flag("--no-augment", no_augment,
                "Skip the 5-fold training-set augmentation");
}

TrainConfig TrainCli::Resolve(uint64_t run_seed) const {
  TrainConfig cfg;
  cfg.lr = lr;
  cfg.batch_size = batch_size;
  cfg.epochs = epochs;
  cfg.seed = run_seed;
  cfg.dropout_p = dropout;
  cfg.Validate();
  return cfg;
}

AugmentParams TrainCli::ResolveAugment(uint64_t run_seed) const {
  AugmentParams a;
  a.enabled = !no_augment;
  a.seed = run_seed;
  return a;
}

std::vector<uint64_t> TrainCli::RunSeeds() const {
  if (!seeds.empty()) return seeds;
  return {seed};
}

std::string ConfigHash(const FeatureConfig& f, const TrainConfig& t,
                       const AugmentParams& a) {
  nlohmann::ordered_json j;
  j["feature"] = {{"kind", FeatureKindName(f.kind)},
                  {"f_min", f.cqt.f_min},
                  {"f_max", f.cqt.f_max},
                  {"bins_per_octave", f.cqt.bins_per_octave},
                  {"cqt_hop", f.cqt.hop},
                  {"n_fft", f.mel.n_fft},
                  {"mel_hop", f.mel.hop},
                  {"n_filters", f.mel.n_filters},
                  {"n_ceps", f.n_ceps},
                  {"log_floor", f.log_floor},
                  {"sad_margin_db", f.sad.margin_db},
                  {"sad_floor_db", f.sad.floor_db},
                  {"chunk_len", f.chunk_len}};
  j["train"] = {{"lr", t.lr},
                {"batch_size", t.batch_size},
                {"epochs", t.epochs},
                {"dropout", t.dropout_p}};
  j["augment"] = {{"enabled", a.enabled}};
  return HexHash(Fnv1a64(j.dump()));
}

MeanStd ComputeMeanStd(const std::vector<double>& values) {
  MeanStd r;
  if (values.empty()) return r;
  double sum = 0.0;
  for (double v : values) sum += v;
  r.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - r.mean) * (v - r.mean);
    r.std = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return r;
}

std::string SanitizeFilename(const std::string& id) {
  std::string out;
  out.reserve(id.size());
  for (char c : id) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '-' || c == '_' || c == '.';
    out += ok ? c : '_';
  }
  if (out.empty()) out = "utt";
  return out;
}

}  // namespace cqser::cli
