// cqser/synth/synthcorpus.h

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

#ifndef CQSER_SYNTH_SYNTHCORPUS_H_
#define CQSER_SYNTH_SYNTHCORPUS_H_

#include <cstdint>
#include <string>
#include <vector>

namespace cqser {

// A self-contained synthetic emotion corpus for demos and end-to-end
// verification. Each "emotion" is a distinct low-frequency AM/FM tone
// signature; each "speaker" shifts the class frequencies by a fixed
// factor. Utterances carry leading/trailing silence and background noise
// so the SAD and augmentation stages have something to do.
struct SynthCorpusOptions {
  int n_speakers = 8;
  int utterances_per_speaker = 10;  // split round-robin over the classes
  double min_duration_s = 2.0;
  double max_duration_s = 4.0;
  int sample_rate = 16000;
  uint64_t seed = 0;
  std::string corpus_id = "synth";
  // Labels double as class names; size fixes the class count (2..4).
  std::vector<std::string> labels = {"angry", "happy", "sad", "neutral"};
};

// Writes <dir>/wav/*.wav plus <dir>/manifest.csv and returns the manifest
// path. Deterministic in (options, seed).
std::string MakeSyntheticCorpus(const std::string& dir,
                                const SynthCorpusOptions& options);

}  // namespace cqser

#endif  // CQSER_SYNTH_SYNTHCORPUS_H_
