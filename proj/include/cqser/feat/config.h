// cqser/feat/config.h

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

#ifndef CQSER_FEAT_CONFIG_H_
#define CQSER_FEAT_CONFIG_H_

#include <string>

#include "cqser/dsp/cqt.h"
#include "cqser/dsp/mel.h"

namespace cqser {

enum class FeatureKind { kCqt, kCqcc, kMfsc, kMfcc };

const char* FeatureKindName(FeatureKind kind);
FeatureKind ParseFeatureKind(const std::string& name);  // throws on unknown

// Energy-based speech activity detection: a frame is kept when its level is
// within margin_db of the loudest frame of the utterance and above an
// absolute floor (dBFS).
struct SadConfig {
  double margin_db = 40.0;
  double floor_db = -60.0;

  void Validate() const;
};

struct FeatureConfig {
  FeatureKind kind = FeatureKind::kCqt;
  CqtConfig cqt;          // used by kCqt / kCqcc
  MelConfig mel;          // used by kMfsc / kMfcc
  int n_ceps = 0;         // cepstral kinds; 0 keeps all coefficients
  double log_floor = 1e-10;
  SadConfig sad;
  int chunk_len = 100;

  bool IsCepstral() const {
    return kind == FeatureKind::kCqcc || kind == FeatureKind::kMfcc;
  }
  bool UsesCqt() const {
    return kind == FeatureKind::kCqt || kind == FeatureKind::kCqcc;
  }
  int Hop() const { return UsesCqt() ? cqt.hop : mel.hop; }
  int SampleRate() const {
    return UsesCqt() ? cqt.sample_rate : mel.sample_rate;
  }
  void Validate() const;
};

}  // namespace cqser

#endif  // CQSER_FEAT_CONFIG_H_
