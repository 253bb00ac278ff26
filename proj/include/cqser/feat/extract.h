// cqser/feat/extract.h

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

#ifndef CQSER_FEAT_EXTRACT_H_
#define CQSER_FEAT_EXTRACT_H_

#include "cqser/audio/wav.h"
#include "cqser/dsp/tfm.h"
#include "cqser/feat/config.h"

namespace cqser {

// Elementwise ln(v^2 + eps) for magnitude input, ln(v + eps) for power
// input; result kind is log-power.
TimeFreqMatrix LogCompress(const TimeFreqMatrix& m, double eps);

// Uniformly resamples the geometric CQT frequency axis (linear
// interpolation, per frame) and applies an orthonormal DCT-II, keeping the
// first n_ceps coefficients (c0 included; n_ceps <= 0 keeps all).
// Requires at least 2 bins.
TimeFreqMatrix CqccFromLogCqt(const TimeFreqMatrix& log_cqt, int n_ceps);

// Log mel-filterbank energies. Analysis frames are 25 ms, centered at
// t*hop, zero-padded at the signal edges, frames = floor(len/hop) + 1.
TimeFreqMatrix ExtractMfsc(const AudioBuffer& buf, const FeatureConfig& cfg);

// MFSC followed by a per-frame orthonormal DCT-II (first n_ceps kept).
TimeFreqMatrix ExtractMfcc(const AudioBuffer& buf, const FeatureConfig& cfg);

// Log-compressed CQT magnitudes.
TimeFreqMatrix ExtractCqt(const AudioBuffer& buf, const FeatureConfig& cfg);

// CQCC: log CQT -> uniform resampling -> DCT.
TimeFreqMatrix ExtractCqcc(const AudioBuffer& buf, const FeatureConfig& cfg);

// Dispatch on cfg.kind. All kinds produce log-domain (log-power or
// cepstral) matrices ready for SAD / CMVN / chunking.
TimeFreqMatrix ExtractFeatures(const AudioBuffer& buf,
                               const FeatureConfig& cfg);

}  // namespace cqser

#endif  // CQSER_FEAT_EXTRACT_H_
