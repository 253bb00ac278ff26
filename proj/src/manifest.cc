// cqser/src/manifest.cc

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

#include "cqser/audio/manifest.h"

#include <algorithm>
#include <filesystem>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include "cqser/util/csv.h"

namespace cqser {

int Manifest::LabelIndex(const std::string& emotion) const {
  for (size_t i = 0; i < label_set.size(); ++i)
    if (label_set[i] == emotion) return static_cast<int>(i);
  return -1;
}

std::vector<std::string> Manifest::Speakers() const {
  std::set<std::string> s;
  for (const auto& r : records) s.insert(r.speaker_id);
  return {s.begin(), s.end()};
}

Manifest LoadManifest(const std::string& path,
                      const std::vector<std::string>& label_override) {
  CsvTable table = ReadCsv(path);
  const char* required[] = {"id", "audio_path", "speaker_id", "emotion",
                            "corpus_id"};
  int cols[5];
  for (int i = 0; i < 5; ++i) {
    cols[i] = table.Column(required[i]);
    if (cols[i] < 0)
      throw std::runtime_error("manifest " + path + ": missing column `" +
                               required[i] + "`");
  }
  int split_col = table.Column("split_hint");
  if (table.rows.empty())
    throw std::runtime_error("manifest " + path + ": no utterance rows");

  {
    std::set<std::string> dedup(label_override.begin(), label_override.end());
    if (!label_override.empty() && dedup.size() != label_override.size())
      throw std::runtime_error("manifest " + path +
                               ": label override contains duplicates");
  }

  std::filesystem::path base = std::filesystem::path(path).parent_path();
  Manifest man;
  std::unordered_set<std::string> seen_ids;
  std::set<std::string> emotions;
  for (const auto& row : table.rows) {
    UtteranceRecord rec;
    rec.id = row[static_cast<size_t>(cols[0])];
    rec.audio_path = row[static_cast<size_t>(cols[1])];
    rec.speaker_id = row[static_cast<size_t>(cols[2])];
    rec.emotion = row[static_cast<size_t>(cols[3])];
    rec.corpus_id = row[static_cast<size_t>(cols[4])];
    if (split_col >= 0 && !row[static_cast<size_t>(split_col)].empty())
      rec.split_hint = row[static_cast<size_t>(split_col)];
    if (rec.id.empty())
      throw std::runtime_error("manifest " + path + ": empty utterance id");
    if (!seen_ids.insert(rec.id).second)
      throw std::runtime_error("manifest " + path + ": duplicate id `" +
                               rec.id + "`");
    std::filesystem::path ap(rec.audio_path);
    if (ap.is_relative()) rec.audio_path = (base / ap).string();
    emotions.insert(rec.emotion);
    man.records.push_back(std::move(rec));
  }

  if (label_override.empty()) {
    man.label_set.assign(emotions.begin(), emotions.end());  // sorted
  } else {
    man.label_set = label_override;
    for (const auto& r : man.records)
      if (std::find(man.label_set.begin(), man.label_set.end(), r.emotion) ==
          man.label_set.end())
        throw std::runtime_error("manifest " + path + ": utterance `" + r.id +
                                 "` has emotion `" + r.emotion +
                                 "` outside the configured label set");
  }
  man.corpus_id = man.records.front().corpus_id;
  return man;
}

}  // namespace cqser
