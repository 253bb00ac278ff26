// cqser/eval/metrics.h

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

#ifndef CQSER_EVAL_METRICS_H_
#define CQSER_EVAL_METRICS_H_

#include <cstdint>
#include <string>
#include <vector>

namespace cqser {

// Contingency matrix; rows are true classes, columns predictions.
struct ConfusionMatrix {
  std::vector<std::string> class_names;
  std::vector<int64_t> a;  // K x K row-major

  explicit ConfusionMatrix(std::vector<std::string> names = {});

  int K() const { return static_cast<int>(class_names.size()); }
  int64_t& At(int true_class, int predicted) {
    return a[static_cast<size_t>(true_class) * class_names.size() + predicted];
  }
  int64_t At(int true_class, int predicted) const {
    return a[static_cast<size_t>(true_class) * class_names.size() + predicted];
  }
  void Add(int true_class, int predicted, int64_t count = 1);
  int64_t RowSum(int true_class) const;
  int64_t Total() const;
  int64_t Trace() const;

  // Elementwise sum; class names must match.
  ConfusionMatrix& operator+=(const ConfusionMatrix& other);
};

// (1/K) sum_i A_ii / sum_j A_ij. Throws when any class has no test
// samples, naming the class.
double Uar(const ConfusionMatrix& a);

// trace(A) / sum(A); requires at least one sample.
double Accuracy(const ConfusionMatrix& a);

// Recall per class; classes without samples get -1 (absent).
std::vector<double> PerClassRecall(const ConfusionMatrix& a);

struct RunMetadata {
  std::string config_hash;
  uint64_t seed = 0;
  std::string split_id;
};

struct EvalReport {
  double accuracy = 0.0;
  double uar = 0.0;  // mean recall over classes with >= 1 sample
  ConfusionMatrix confusion;
  std::vector<double> per_class_recall;  // -1 marks an absent class
  RunMetadata metadata;
};

// Derives all metrics from a confusion matrix.
EvalReport BuildReport(const ConfusionMatrix& confusion,
                       const RunMetadata& metadata);

// JSON with stable key order (accuracy, uar, recalls, raw and
// row-normalized confusion, metadata). No timestamps: reruns with the
// same config and seed serialize byte-identically.
std::string ReportToJson(const EvalReport& report, int indent = 2);

// Confusion matrix as CSV (header row `true\\predicted,<classes...>`).
void WriteConfusionCsv(const ConfusionMatrix& a, const std::string& path);

}  // namespace cqser

#endif  // CQSER_EVAL_METRICS_H_
