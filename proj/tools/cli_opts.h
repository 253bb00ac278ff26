// cqser/tools/cli_opts.h

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

#ifndef CQSER_TOOLS_CLI_OPTS_H_
#define CQSER_TOOLS_CLI_OPTS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cqser/eval/harness.h"
#include "cqser/feat/config.h"
#include "cqser/nn/train.h"

namespace cqser::cli {

// Feature flags; a --preset fills everything the user left unset.
struct FeatureCli {
  std::string kind = "cqt";
  std::string preset;
  int bins_per_octave = 3;
  int hop = 64;
  double f_min = 32.7;
  double f_max = 0.0;  // Nyquist
  int n_filters = 24;
  int n_fft = 512;
  int n_ceps = 0;
  int chunk_len = 100;
  double sad_margin_db = 40.0;
  double sad_floor_db = -60.0;
  double log_floor = 1e-10;

  CLI::Option* kind_opt = nullptr;
  CLI::Option* bins_opt = nullptr;
  CLI::Option* hop_opt = nullptr;
  CLI::Option* filters_opt = nullptr;

  void Register(CLI::App* cmd);
  FeatureConfig Resolve() const;  // applies preset, validates
};

struct TrainCli {
  double lr = 0.001;
  int batch_size = 64;
  int epochs = 50;
  uint64_t seed = 0;
  std::vector<uint64_t> seeds;  // --seeds overrides --seed for repetition
  double dropout = 0.3;
  bool no_augment = false;

  void Register(CLI::App* cmd);
  TrainConfig Resolve(uint64_t run_seed) const;
  AugmentParams ResolveAugment(uint64_t run_seed) const;
  std::vector<uint64_t> RunSeeds() const;
};

// Stable hash over the resolved run configuration (features, training,
// augmentation); recorded in every report's metadata.
std::string ConfigHash(const FeatureConfig& f, const TrainConfig& t,
                       const AugmentParams& a);

// mean and sample standard deviation (0 for a single value)
struct MeanStd {
  double mean = 0.0;
  double std = 0.0;
};
MeanStd ComputeMeanStd(const std::vector<double>& values);

// Replaces characters that are awkward in filenames; collisions get a
// short hash suffix appended by the caller.
std::string SanitizeFilename(const std::string& id);

}  // namespace cqser::cli

#endif  // CQSER_TOOLS_CLI_OPTS_H_
