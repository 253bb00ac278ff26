// cqser/src/synthcorpus.cc

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

#include "cqser/synth/synthcorpus.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "cqser/audio/wav.h"
#include "cqser/util/rng.h"

namespace cqser {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct ClassSignature {
  double f1, f2;        // tone pair, Hz (nominal speaker)
  double am_rate;       // amplitude modulation, Hz (0 = steady)
  double am_depth;
  double fm_rate;       // vibrato, Hz (0 = none)
  double fm_excursion;  // relative
};

// Tone pairs sit on distinct constant-Q bins (B=3, f_min 32.7) so the
// classes stay separable after the coarse 24-bin analysis even with the
// per-speaker pitch spread.
const ClassSignature kSignatures[4] = {
    {103.9, 207.8, 7.0, 0.8, 0.0, 0.0},
    {164.9, 329.9, 4.5, 0.5, 5.5, 0.04},
    {261.8, 523.6, 1.5, 0.6, 0.0, 0.0},
    {415.6, 831.2, 0.0, 0.0, 0.0, 0.0},
};

}  // namespace

std::string MakeSyntheticCorpus(const std::string& dir,
                                const SynthCorpusOptions& opt) {
  if (opt.n_speakers < 1 || opt.utterances_per_speaker < 1)
    throw std::runtime_error("synth: need speakers and utterances >= 1");
  if (opt.labels.size() < 2 || opt.labels.size() > 4)
    throw std::runtime_error("synth: supports 2..4 classes");
  if (!(opt.min_duration_s > 0.6) || opt.max_duration_s < opt.min_duration_s)
    throw std::runtime_error("synth: bad duration range");

  namespace fs = std::filesystem;
  fs::create_directories(fs::path(dir) / "wav");
  const std::string manifest_path = (fs::path(dir) / "manifest.csv").string();
  std::ofstream man(manifest_path, std::ios::trunc);
  if (!man) throw std::runtime_error("synth: cannot write " + manifest_path);
  man << "id,audio_path,speaker_id,emotion,corpus_id\n";

  const int n_classes = static_cast<int>(opt.labels.size());
  const int fs_hz = opt.sample_rate;
  for (int s = 0; s < opt.n_speakers; ++s) {
    const double speaker_factor =
        opt.n_speakers == 1
            ? 1.0
            : 0.88 + 0.24 * static_cast<double>(s) / (opt.n_speakers - 1);
    for (int u = 0; u < opt.utterances_per_speaker; ++u) {
      const int cls = u % n_classes;
      const std::string& label = opt.labels[static_cast<size_t>(cls)];
      const std::string id = "spk" + std::to_string(s) + "_utt" +
                             std::to_string(u) + "_" + label;
      Rng rng(DeriveSeed(opt.seed, id));

      const double dur =
          rng.Uniform(opt.min_duration_s, opt.max_duration_s);
      const int n = static_cast<int>(dur * fs_hz);
      const int sil = fs_hz / 4;  // 0.25 s silence at both ends
      const double jitter = 1.0 + rng.Uniform(-0.02, 0.02);
      const ClassSignature& sig = kSignatures[cls];
      const double f1 = sig.f1 * speaker_factor * jitter;
      const double f2 = sig.f2 * speaker_factor * jitter;
      const double am_phase = rng.Uniform(0.0, 2.0 * kPi);
      const double drift_phase = rng.Uniform(0.0, 2.0 * kPi);

      AudioBuffer buf;
      buf.sample_rate = fs_hz;
      buf.samples.assign(static_cast<size_t>(n), 0.0f);

      double phase1 = rng.Uniform(0.0, 2.0 * kPi);
      double phase2 = rng.Uniform(0.0, 2.0 * kPi);
      double tone_energy = 0.0;
      const int tone_lo = sil, tone_hi = n - sil;
      for (int i = tone_lo; i < tone_hi; ++i) {
        const double t = static_cast<double>(i) / fs_hz;
        double vib = 1.0;
        if (sig.fm_rate > 0.0)
          vib = 1.0 + sig.fm_excursion * std::sin(2.0 * kPi * sig.fm_rate * t);
        phase1 += 2.0 * kPi * f1 * vib / fs_hz;
        phase2 += 2.0 * kPi * f2 * vib / fs_hz;
        double env = 1.0;
        if (sig.am_rate > 0.0)
          env = 1.0 - sig.am_depth * 0.5 *
                          (1.0 + std::sin(2.0 * kPi * sig.am_rate * t + am_phase));
        env *= 1.0 + 0.08 * std::sin(2.0 * kPi * 0.3 * t + drift_phase);
        const double v =
            0.25 * env * (0.65 * std::sin(phase1) + 0.35 * std::sin(phase2));
        buf.samples[static_cast<size_t>(i)] = static_cast<float>(v);
        tone_energy += v * v;
      }
      const double tone_rms =
          std::sqrt(tone_energy / std::max(1, tone_hi - tone_lo));
      const double snr_db = rng.Uniform(18.0, 26.0);
      const double noise_sigma = tone_rms * std::pow(10.0, -snr_db / 20.0);
      for (int i = tone_lo; i < tone_hi; ++i)
        buf.samples[static_cast<size_t>(i)] +=
            static_cast<float>(noise_sigma * rng.Gaussian());
      // Faint dither in the silent margins, far below the SAD floor.
      for (int i = 0; i < n; ++i)
        if (i < tone_lo || i >= tone_hi)
          buf.samples[static_cast<size_t>(i)] +=
              static_cast<float>(1e-4 * rng.Gaussian());

      const std::string rel = "wav/" + id + ".wav";
      WriteWavFloat32((fs::path(dir) / rel).string(), buf);
      man << id << "," << rel << ",spk" << s << "," << label << ","
          << opt.corpus_id << "\n";
    }
  }
  if (!man) throw std::runtime_error("synth: manifest write failed");
  return manifest_path;
}

}  // namespace cqser
