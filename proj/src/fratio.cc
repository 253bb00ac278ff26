// cqser/src/fratio.cc

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

#include "cqser/feat/fratio.h"

#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace cqser {

std::vector<double> FRatio(
    const std::vector<std::pair<const TimeFreqMatrix*, int>>& items,
    int n_classes) {
  if (n_classes < 2)
    throw std::runtime_error("f_ratio: need at least 2 classes");
  if (items.empty()) throw std::runtime_error("f_ratio: no utterances");
  const int bins = items.front().first->bins;

  // Per (class, bin): frame count, sum, sum of squares.
  std::vector<int64_t> count(static_cast<size_t>(n_classes), 0);
  std::vector<double> sum(static_cast<size_t>(n_classes) * bins, 0.0);
  std::vector<double> sumsq(static_cast<size_t>(n_classes) * bins, 0.0);

  for (const auto& [m, cls] : items) {
    if (cls < 0 || cls >= n_classes)
      throw std::runtime_error("f_ratio: class index out of range");
    if (m->bins != bins)
      throw std::runtime_error("f_ratio: inconsistent bin counts (" +
                               std::to_string(m->bins) + " vs " +
                               std::to_string(bins) + ")");
    count[static_cast<size_t>(cls)] += m->frames;
    for (int b = 0; b < bins; ++b) {
      const float* row = m->Row(b);
      double s = 0.0, s2 = 0.0;
      for (int t = 0; t < m->frames; ++t) {
        s += row[t];
        s2 += static_cast<double>(row[t]) * row[t];
      }
      sum[static_cast<size_t>(cls) * bins + b] += s;
      sumsq[static_cast<size_t>(cls) * bins + b] += s2;
    }
  }
  for (int k = 0; k < n_classes; ++k)
    if (count[static_cast<size_t>(k)] == 0)
      throw std::runtime_error("f_ratio: class " + std::to_string(k) +
                               " has no frames");

  std::vector<double> f(static_cast<size_t>(bins));
  for (int b = 0; b < bins; ++b) {
    double mean_of_means = 0.0;
    for (int k = 0; k < n_classes; ++k)
      mean_of_means += sum[static_cast<size_t>(k) * bins + b] /
                       count[static_cast<size_t>(k)];
    mean_of_means /= n_classes;

    double between = 0.0, within = 0.0;
    for (int k = 0; k < n_classes; ++k) {
      const double n = static_cast<double>(count[static_cast<size_t>(k)]);
      const double mu = sum[static_cast<size_t>(k) * bins + b] / n;
      const double var =
          std::max(0.0, sumsq[static_cast<size_t>(k) * bins + b] / n - mu * mu);
      between += (mu - mean_of_means) * (mu - mean_of_means);
      within += var;
    }
    between /= n_classes;
    within /= n_classes;
    f[static_cast<size_t>(b)] =
        within > 0.0 ? between / within
                     : std::numeric_limits<double>::infinity();
  }
  return f;
}

void WriteFRatioCsv(const std::vector<double>& f_ratio,
                    const std::vector<double>& bin_freqs,
                    const std::string& path) {
  if (f_ratio.size() != bin_freqs.size())
    throw std::runtime_error("f_ratio CSV: bin count mismatch");
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("f_ratio CSV " + path + ": cannot open");
  out << "bin_index,center_freq_hz,f_ratio\n";
  out.precision(12);
  for (size_t b = 0; b < f_ratio.size(); ++b) {
    out << b << "," << bin_freqs[b] << ",";
    if (std::isinf(f_ratio[b]))
      out << "inf";
    else
      out << f_ratio[b];
    out << "\n";
  }
  if (!out) throw std::runtime_error("f_ratio CSV " + path + ": write failed");
}

}  // namespace cqser
