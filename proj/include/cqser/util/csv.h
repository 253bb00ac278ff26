// cqser/util/csv.h

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

#ifndef CQSER_UTIL_CSV_H_
#define CQSER_UTIL_CSV_H_

#include <string>
#include <vector>

namespace cqser {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Index of a header column, -1 if absent.
  int Column(const std::string& name) const;
};

// Reads a comma-separated file with a header row. Supports double-quoted
// fields with embedded commas and "" escapes; tolerates CRLF line endings.
// Throws std::runtime_error on unreadable files or ragged rows.
CsvTable ReadCsv(const std::string& path);

// Quotes a field if needed and appends it; used by the CSV writers.
std::string CsvEscape(const std::string& field);

}  // namespace cqser

#endif  // CQSER_UTIL_CSV_H_
