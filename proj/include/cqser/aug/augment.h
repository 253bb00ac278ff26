// cqser/aug/augment.h

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

#ifndef CQSER_AUG_AUGMENT_H_
#define CQSER_AUG_AUGMENT_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cqser/audio/wav.h"

namespace cqser {

enum class AugmentKind {
  kIdentity,
  kWhiteNoise,
  kPinkNoise,
  kBabble,
  kReverb,
};

const char* AugmentKindName(AugmentKind kind);

struct AugmentSpec {
  AugmentKind kind = AugmentKind::kIdentity;
  double snr_db = 20.0;   // noise kinds; valid range [0, 30]
  double rt60_s = 0.3;    // reverb; valid range (0, 2]
  uint64_t seed = 0;

  void Validate() const;
};

// One entry of the 5-fold augmentation plan. utterance_id carries the
// `#aug<k>` suffix for the four corrupted copies; the identity copy keeps
// the source id.
struct AugmentPlanEntry {
  std::string utterance_id;
  std::string source_id;
  AugmentSpec spec;
};

// x + g*n with g chosen so that 10 log10(P_x / P_{gn}) equals snr_db.
// White noise is i.i.d. Gaussian; pink is 1/f-shaped; babble sums 6
// time-shifted, shuffled copies drawn from `pool` (other training
// utterances). The result is clamped to [-4, 4]. Throws on silent input
// or (for babble) an empty pool.
AudioBuffer AddNoise(const AudioBuffer& buf, AugmentKind kind, double snr_db,
                     uint64_t seed, std::span<const AudioBuffer> pool = {});

// Synthetic room impulse response: seeded Gaussian noise under an
// exponential envelope whose energy decays 60 dB over rt60_s, length
// 1.5*rt60_s, peak-normalized.
std::vector<float> SynthRir(double rt60_s, int sample_rate, uint64_t seed);

// Full convolution with the RIR, truncated to the input length, then
// peak-renormalized to the input peak.
AudioBuffer ApplyReverb(const AudioBuffer& buf, std::span<const float> rir);

// Exactly 5 entries per training utterance: the identity plus four
// corruptions drawn deterministically from {white, pink, babble, reverb}
// with SNR uniform over {0,5,10,15,20} dB and RT60 uniform over
// [0.2, 0.8] s. Seeds derive from (seed, utterance, fold index), so a
// corruption does not depend on which evaluation fold requests it.
std::vector<AugmentPlanEntry> MakeAugmentPlan(
    const std::vector<std::string>& train_ids, uint64_t seed);

// Applies one plan entry; `pool` feeds the babble generator.
AudioBuffer ApplyAugment(const AudioBuffer& buf, const AugmentSpec& spec,
                         std::span<const AudioBuffer> pool = {});

}  // namespace cqser

#endif  // CQSER_AUG_AUGMENT_H_
