// cqser/audio/manifest.h

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

#ifndef CQSER_AUDIO_MANIFEST_H_
#define CQSER_AUDIO_MANIFEST_H_

#include <optional>
#include <string>
#include <vector>

namespace cqser {

// One utterance row of a corpus manifest.
struct UtteranceRecord {
  std::string id;
  std::string audio_path;   // resolved relative to the manifest's directory
  std::string speaker_id;
  std::string emotion;
  std::string corpus_id;
  std::optional<std::string> split_hint;
};

struct Manifest {
  std::vector<UtteranceRecord> records;
  std::vector<std::string> label_set;  // ordered, no duplicates
  std::string corpus_id;

  int LabelIndex(const std::string& emotion) const;
  std::vector<std::string> Speakers() const;  // sorted, distinct
};

// Loads a manifest CSV with header `id,audio_path,speaker_id,emotion,
// corpus_id` (an optional trailing `split_hint` column is accepted).
// Relative audio paths are resolved against the manifest's directory.
// label_set defaults to the sorted distinct emotions; when label_override
// is non-empty it is used instead and any emotion outside it is an error.
// Throws on missing columns, duplicate ids and empty files.
Manifest LoadManifest(const std::string& path,
                      const std::vector<std::string>& label_override = {});

}  // namespace cqser

#endif  // CQSER_AUDIO_MANIFEST_H_
