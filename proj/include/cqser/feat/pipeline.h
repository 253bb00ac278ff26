// cqser/feat/pipeline.h

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

#ifndef CQSER_FEAT_PIPELINE_H_
#define CQSER_FEAT_PIPELINE_H_

#include <string>
#include <vector>

#include "cqser/audio/wav.h"
#include "cqser/dsp/tfm.h"
#include "cqser/feat/config.h"

namespace cqser {

// One training sample: exactly chunk_len consecutive frames.
struct FeatureChunk {
  int bins = 0;
  int chunk_len = 0;
  std::vector<float> values;  // row-major bins x chunk_len
  int label = -1;
  std::string utterance_id;

  float At(int bin, int frame) const {
    return values[static_cast<size_t>(bin) * chunk_len + frame];
  }
};

// Drops frames whose 25 ms time-domain level is more than cfg.margin_db
// below the loudest frame or below cfg.floor_db (dBFS). Column order is
// preserved. Throws when every frame is removed (utterance unusable) or
// when the matrix frame count is inconsistent with buf/hop.
TimeFreqMatrix SadFilter(const TimeFreqMatrix& m, const AudioBuffer& buf,
                         const SadConfig& cfg, int hop);

// Per-coefficient utterance-level mean/variance normalization (population
// variance, std floored at 1e-8). Requires >= 2 frames.
TimeFreqMatrix Cmvn(const TimeFreqMatrix& m);

// Consecutive non-overlapping chunk_len windows; a tail shorter than
// chunk_len is discarded. When the whole utterance is shorter than
// chunk_len, one chunk is produced by cyclic repetition.
std::vector<FeatureChunk> MakeChunks(const TimeFreqMatrix& m, int chunk_len,
                                     int label,
                                     const std::string& utterance_id);

// The fixed order of the front-end: extract -> SAD -> CMVN.
TimeFreqMatrix ExtractPipeline(const AudioBuffer& buf,
                               const FeatureConfig& cfg);

}  // namespace cqser

#endif  // CQSER_FEAT_PIPELINE_H_
