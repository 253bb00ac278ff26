// cqser/tools/cmd_data.cc

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

// Data-side subcommands: synth, extract, fratio.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <mutex>
#include <set>

#include "json.hpp"

#include "cli_opts.h"
#include "commands.h"
#include "cqser/audio/manifest.h"
#include "cqser/audio/resample.h"
#include "cqser/feat/extract.h"
#include "cqser/feat/fratio.h"
#include "cqser/synth/synthcorpus.h"
#include "cqser/util/csv.h"
#include "cqser/util/hash.h"
#include "cqser/util/parallel.h"

namespace fs = std::filesystem;

namespace cqser::cli {

void RegisterSynth(CLI::App& app) {
  auto cmd = app.add_subcommand(
      "synth", "Generate a synthetic emotion corpus (WAVs + manifest)");
  struct Opts {
    std::string out;
    int speakers = 8;
    int utts = 10;
    int classes = 4;
    double min_dur = 2.0;
    double max_dur = 4.0;
    uint64_t seed = 0;
    bool json = false;
  };
  auto o = std::make_shared<Opts>();
  cmd->add_option("--out", o->out, "Output directory")->required();
  cmd->add_option("--speakers", o->speakers, "Synthetic speaker count");
  cmd->add_option("--utts", o->utts, "Utterances per speaker");
  cmd->add_option("--classes", o->classes, "Emotion classes (2..4)");
  cmd->add_option("--min-dur", o->min_dur, "Minimum duration, s");
  cmd->add_option("--max-dur", o->max_dur, "Maximum duration, s");
  cmd->add_option("--seed", o->seed, "RNG seed")->envname("CQSER_SEED");
  cmd->add_flag("--json", o->json, "Machine-readable output");
  cmd->callback([o] {
    SynthCorpusOptions opt;
    opt.n_speakers = o->speakers;
    opt.utterances_per_speaker = o->utts;
    opt.min_duration_s = o->min_dur;
    opt.max_duration_s = o->max_dur;
    opt.seed = o->seed;
    opt.labels.resize(static_cast<size_t>(o->classes));
    const auto& canon = LabelAliasMap::CanonicalLabels();
    for (int i = 0; i < o->classes; ++i)
      opt.labels[static_cast<size_t>(i)] = canon[static_cast<size_t>(i)];
    const std::string manifest = MakeSyntheticCorpus(o->out, opt);
    if (o->json) {
      nlohmann::ordered_json j{{"manifest", manifest},
                               {"utterances", o->speakers * o->utts}};
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << manifest << "\n";
    }
  });
}

void RegisterExtract(CLI::App& app) {
  auto cmd = app.add_subcommand(
      "extract", "Extract one feature container per utterance plus an index");
  struct Opts {
    std::string manifest;
    std::string out;
    bool strict = false;
    int jobs = 1;
    bool json = false;
    FeatureCli feature;
  };
  auto o = std::make_shared<Opts>();
  cmd->add_option("--manifest", o->manifest, "Corpus manifest CSV")->required();
  cmd->add_option("--out", o->out, "Output directory")->required();
  cmd->add_flag("--strict", o->strict,
                "Abort on the first unreadable utterance (no partial index)");
  cmd->add_option("--jobs", o->jobs, "Worker threads")->envname("CQSER_JOBS");
  cmd->add_flag("--json", o->json, "Machine-readable output");
  o->feature.Register(cmd);
  cmd->callback([o] {
    const FeatureConfig cfg = o->feature.Resolve();
    const Manifest man = LoadManifest(o->manifest);
    fs::create_directories(o->out);

    // Stable, collision-free file names in manifest order.
    std::vector<std::string> names(man.records.size());
    {
      std::set<std::string> used;
      for (size_t i = 0; i < man.records.size(); ++i) {
        std::string base = SanitizeFilename(man.records[i].id);
        if (!used.insert(base).second) {
          base += "-" + HexHash(Fnv1a64(man.records[i].id)).substr(0, 8);
          used.insert(base);
        }
        names[i] = base + ".tfm";
      }
    }

    struct Row {
      bool ok = false;
      std::string error;
      int bins = 0, frames = 0;
    };
    std::vector<Row> rows(man.records.size());
    ParallelFor(man.records.size(), o->jobs, [&](size_t i) {
      const auto& rec = man.records[i];
      try {
        const AudioBuffer buf = ResampleTo16k(ReadWav(rec.audio_path));
        const TimeFreqMatrix m = ExtractFeatures(buf, cfg);
        SaveTfm(m, (fs::path(o->out) / names[i]).string());
        rows[i] = {true, "", m.bins, m.frames};
      } catch (const std::exception& e) {
        rows[i] = {false, e.what(), 0, 0};
      }
    });

    size_t failed = 0;
    for (size_t i = 0; i < rows.size(); ++i) {
      if (!rows[i].ok) {
        ++failed;
        std::cerr << "extract: " << man.records[i].id << ": "
                  << rows[i].error << "\n";
      }
    }
    if (o->strict && failed > 0)
      throw std::runtime_error("extract: " + std::to_string(failed) +
                               " utterance(s) failed (--strict)");

    const std::string index_path = (fs::path(o->out) / "index.csv").string();
    std::ofstream index(index_path, std::ios::trunc);
    if (!index) throw std::runtime_error("extract: cannot write " + index_path);
    index << "id,feature_path,speaker_id,emotion,corpus_id,bins,frames\n";
    for (size_t i = 0; i < man.records.size(); ++i) {
      if (!rows[i].ok) continue;
      const auto& rec = man.records[i];
      index << CsvEscape(rec.id) << "," << names[i] << ","
            << CsvEscape(rec.speaker_id) << "," << CsvEscape(rec.emotion)
            << "," << CsvEscape(rec.corpus_id) << "," << rows[i].bins << ","
            << rows[i].frames << "\n";
    }
    if (!index) throw std::runtime_error("extract: index write failed");

    if (o->json) {
      nlohmann::ordered_json j{{"index", index_path},
                               {"written", man.records.size() - failed},
                               {"skipped", failed}};
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "wrote " << (man.records.size() - failed)
                << " feature files, index " << index_path << "\n";
    }
  });
}

void RegisterFRatio(CLI::App& app) {
  auto cmd = app.add_subcommand(
      "fratio", "Per-bin F-ratio class separability from extracted features");
  struct Opts {
    std::string index;
    std::string out;
    std::string text_filter;
    bool json = false;
  };
  auto o = std::make_shared<Opts>();
  cmd->add_option("--index", o->index, "index.csv from `extract`")->required();
  cmd->add_option("--out", o->out, "Output CSV path")->required();
  cmd->add_option("--text-filter", o->text_filter,
                  "Keep only utterances whose id contains this substring "
                  "(restrict to fixed-text material)");
  cmd->add_flag("--json", o->json, "Machine-readable output");
  cmd->callback([o] {
    const CsvTable table = ReadCsv(o->index);
    const int id_col = table.Column("id");
    const int path_col = table.Column("feature_path");
    const int emo_col = table.Column("emotion");
    if (id_col < 0 || path_col < 0 || emo_col < 0)
      throw std::runtime_error(
          "fratio: index needs columns id, feature_path, emotion");

    struct Item {
      std::string id, path, emotion;
    };
    std::vector<Item> items;
    for (const auto& row : table.rows) {
      const std::string& id = row[static_cast<size_t>(id_col)];
      if (!o->text_filter.empty() &&
          id.find(o->text_filter) == std::string::npos)
        continue;
      items.push_back({id, row[static_cast<size_t>(path_col)],
                       row[static_cast<size_t>(emo_col)]});
    }
    if (items.empty()) {
      if (!o->text_filter.empty())
        throw std::runtime_error("fratio: text filter `" + o->text_filter +
                                 "` matched no utterances");
      throw std::runtime_error("fratio: empty index");
    }
    // Deterministic reduction order.
    std::sort(items.begin(), items.end(),
              [](const Item& a, const Item& b) { return a.id < b.id; });

    std::set<std::string> classes;
    for (const auto& it : items) classes.insert(it.emotion);
    std::vector<std::string> class_names(classes.begin(), classes.end());

    const fs::path base = fs::path(o->index).parent_path();
    std::vector<TimeFreqMatrix> matrices;
    matrices.reserve(items.size());
    std::vector<std::pair<const TimeFreqMatrix*, int>> pairs;
    for (const auto& it : items) {
      fs::path p(it.path);
      if (p.is_relative()) p = base / p;
      matrices.push_back(LoadTfm(p.string()));
      const int cls = static_cast<int>(
          std::find(class_names.begin(), class_names.end(), it.emotion) -
          class_names.begin());
      pairs.emplace_back(nullptr, cls);
    }
    for (size_t i = 0; i < matrices.size(); ++i) pairs[i].first = &matrices[i];

    const auto f = FRatio(pairs, static_cast<int>(class_names.size()));
    WriteFRatioCsv(f, matrices.front().bin_freqs, o->out);

    size_t argmax = 0;
    for (size_t i = 1; i < f.size(); ++i)
      if (f[i] > f[argmax]) argmax = i;
    if (o->json) {
      nlohmann::ordered_json j{
          {"out", o->out},
          {"bins", f.size()},
          {"utterances", items.size()},
          {"classes", class_names},
          {"argmax_bin", argmax},
          {"argmax_freq_hz", matrices.front().bin_freqs[argmax]}};
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "wrote " << o->out << " (" << f.size()
                << " bins; strongest separation at bin " << argmax << ", "
                << matrices.front().bin_freqs[argmax] << " Hz)\n";
    }
  });
}

}  // namespace cqser::cli
