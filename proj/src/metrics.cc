// cqser/src/metrics.cc

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

#include "cqser/eval/metrics.h"

#include <fstream>
#include <stdexcept>

#include "json.hpp"

#include "cqser/util/csv.h"
#include "cqser/util/hash.h"

namespace cqser {

ConfusionMatrix::ConfusionMatrix(std::vector<std::string> names)
    : class_names(std::move(names)) {
  a.assign(class_names.size() * class_names.size(), 0);
}

void ConfusionMatrix::Add(int true_class, int predicted, int64_t count) {
  if (true_class < 0 || true_class >= K() || predicted < 0 || predicted >= K())
    throw std::runtime_error("confusion: class index out of range");
  At(true_class, predicted) += count;
}

int64_t ConfusionMatrix::RowSum(int true_class) const {
  int64_t s = 0;
  for (int j = 0; j < K(); ++j) s += At(true_class, j);
  return s;
}

int64_t ConfusionMatrix::Total() const {
  int64_t s = 0;
  for (int64_t v : a) s += v;
  return s;
}

int64_t ConfusionMatrix::Trace() const {
  int64_t s = 0;
  for (int i = 0; i < K(); ++i) s += At(i, i);
  return s;
}

ConfusionMatrix& ConfusionMatrix::operator+=(const ConfusionMatrix& other) {
  if (class_names != other.class_names)
    throw std::runtime_error("confusion: class sets differ");
  for (size_t i = 0; i < a.size(); ++i) a[i] += other.a[i];
  return *this;
}

double Uar(const ConfusionMatrix& m) {
  if (m.K() < 1) throw std::runtime_error("uar: empty matrix");
  double sum = 0.0;
  for (int i = 0; i < m.K(); ++i) {
    const int64_t row = m.RowSum(i);
    if (row == 0)
      throw std::runtime_error("uar: class `" + m.class_names[static_cast<size_t>(i)] +
                               "` has no test samples");
    sum += static_cast<double>(m.At(i, i)) / static_cast<double>(row);
  }
  return sum / m.K();
}

double Accuracy(const ConfusionMatrix& m) {
  const int64_t total = m.Total();
  if (total < 1) throw std::runtime_error("accuracy: empty matrix");
  return static_cast<double>(m.Trace()) / static_cast<double>(total);
}

std::vector<double> PerClassRecall(const ConfusionMatrix& m) {
  std::vector<double> recalls(static_cast<size_t>(m.K()), -1.0);
  for (int i = 0; i < m.K(); ++i) {
    const int64_t row = m.RowSum(i);
    if (row > 0)
      recalls[static_cast<size_t>(i)] =
          static_cast<double>(m.At(i, i)) / static_cast<double>(row);
  }
  return recalls;
}

EvalReport BuildReport(const ConfusionMatrix& confusion,
                       const RunMetadata& metadata) {
  EvalReport r;
  r.confusion = confusion;
  r.metadata = metadata;
  r.accuracy = Accuracy(confusion);
  r.per_class_recall = PerClassRecall(confusion);
  double sum = 0.0;
  int present = 0;
  for (double v : r.per_class_recall) {
    if (v >= 0.0) {
      sum += v;
      ++present;
    }
  }
  if (present == 0) throw std::runtime_error("report: no test samples");
  r.uar = sum / present;
  return r;
}

std::string ReportToJson(const EvalReport& report, int indent) {
  nlohmann::ordered_json j;
  j["accuracy"] = report.accuracy;
  j["uar"] = report.uar;
  nlohmann::ordered_json recalls;
  for (int i = 0; i < report.confusion.K(); ++i) {
    const double v = report.per_class_recall[static_cast<size_t>(i)];
    if (v >= 0.0)
      recalls[report.confusion.class_names[static_cast<size_t>(i)]] = v;
    else
      recalls[report.confusion.class_names[static_cast<size_t>(i)]] = nullptr;
  }
  j["per_class_recall"] = recalls;
  j["classes"] = report.confusion.class_names;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  nlohmann::ordered_json norm = nlohmann::ordered_json::array();
  for (int i = 0; i < report.confusion.K(); ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    nlohmann::ordered_json nrow = nlohmann::ordered_json::array();
    const int64_t sum = report.confusion.RowSum(i);
    for (int k = 0; k < report.confusion.K(); ++k) {
      row.push_back(report.confusion.At(i, k));
      if (sum > 0)
        nrow.push_back(static_cast<double>(report.confusion.At(i, k)) /
                       static_cast<double>(sum));
      else
        nrow.push_back(nullptr);
    }
    rows.push_back(row);
    norm.push_back(nrow);
  }
  j["confusion"] = rows;
  j["confusion_row_normalized"] = norm;
  j["metadata"] = {{"config_hash", report.metadata.config_hash},
                   {"seed", report.metadata.seed},
                   {"split_id", report.metadata.split_id}};
  return j.dump(indent) + "\n";
}

void WriteConfusionCsv(const ConfusionMatrix& m, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("confusion CSV " + path + ": cannot open");
  out << "true\\predicted";
  for (const auto& name : m.class_names) out << "," << CsvEscape(name);
  out << "\n";
  for (int i = 0; i < m.K(); ++i) {
    out << CsvEscape(m.class_names[static_cast<size_t>(i)]);
    for (int k = 0; k < m.K(); ++k) out << "," << m.At(i, k);
    out << "\n";
  }
  if (!out) throw std::runtime_error("confusion CSV " + path + ": write failed");
}

}  // namespace cqser
