// cqser/feat/fratio.h

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

#ifndef CQSER_FEAT_FRATIO_H_
#define CQSER_FEAT_FRATIO_H_

#include <string>
#include <utility>
#include <vector>

#include "cqser/dsp/tfm.h"

namespace cqser {

// Per-bin class separability over frame-level features:
//   F_i = [(1/K) sum_k (mu_ki - mu_i)^2] / [(1/K) sum_k var_ki]
// where mu_ki / var_ki are the mean and population variance of bin i over
// all frames of class k and mu_i is the unweighted mean of class means.
// A bin whose within-class variance is zero in every class gets +inf.
//
// items pairs each matrix with its class index in [0, n_classes). All
// matrices must share a bin count; every class needs at least one
// utterance. Callers control accumulation order (sort by utterance id for
// reproducible reductions).
std::vector<double> FRatio(
    const std::vector<std::pair<const TimeFreqMatrix*, int>>& items,
    int n_classes);

// CSV with header bin_index,center_freq_hz,f_ratio (one row per bin,
// +inf rendered as "inf").
void WriteFRatioCsv(const std::vector<double>& f_ratio,
                    const std::vector<double>& bin_freqs,
                    const std::string& path);

}  // namespace cqser

#endif  // CQSER_FEAT_FRATIO_H_
