// cqser/src/augment.cc

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

#include "cqser/aug/augment.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cqser/dsp/fft.h"
#include "cqser/util/rng.h"

namespace cqser {

const char* AugmentKindName(AugmentKind kind) {
  switch (kind) {
    case AugmentKind::kIdentity: return "identity";
    case AugmentKind::kWhiteNoise: return "white_noise";
    case AugmentKind::kPinkNoise: return "pink_noise";
    case AugmentKind::kBabble: return "babble";
    case AugmentKind::kReverb: return "reverb";
  }
  return "unknown";
}

void AugmentSpec::Validate() const {
  if (kind == AugmentKind::kWhiteNoise || kind == AugmentKind::kPinkNoise ||
      kind == AugmentKind::kBabble) {
    if (snr_db < 0.0 || snr_db > 30.0)
      throw std::runtime_error("augment: snr_db must be in [0, 30]");
  }
  if (kind == AugmentKind::kReverb) {
    if (!(rt60_s > 0.0) || rt60_s > 2.0)
      throw std::runtime_error("augment: rt60_s must be in (0, 2]");
  }
}

namespace {

double MeanPower(std::span<const double> x) {
  double acc = 0.0;
  for (double v : x) acc += v * v;
  return x.empty() ? 0.0 : acc / static_cast<double>(x.size());
}

std::vector<double> WhiteNoise(size_t n, Rng& rng) {
  std::vector<double> noise(n);
  for (auto& v : noise) v = rng.Gaussian();
  return noise;
}

// Paul Kellet's three-pole 1/f approximation over white Gaussian input.
std::vector<double> PinkNoise(size_t n, Rng& rng) {
  std::vector<double> noise(n);
  double b0 = 0.0, b1 = 0.0, b2 = 0.0;
  for (auto& v : noise) {
    const double white = rng.Gaussian();
    b0 = 0.99765 * b0 + white * 0.0990460;
    b1 = 0.96300 * b1 + white * 0.2965164;
    b2 = 0.57000 * b2 + white * 1.0526913;
    v = b0 + b1 + b2 + white * 0.1848;
  }
  return noise;
}

std::vector<double> BabbleNoise(size_t n, Rng& rng,
                                std::span<const AudioBuffer> pool) {
  if (pool.empty())
    throw std::runtime_error(
        "augment: babble noise needs a pool of other training utterances");
  constexpr int kVoices = 6;
  std::vector<double> noise(n, 0.0);
  for (int v = 0; v < kVoices; ++v) {
    const auto& src = pool[rng.UniformInt(pool.size())].samples;
    if (src.empty()) continue;
    const size_t shift = rng.UniformInt(src.size());
    for (size_t i = 0; i < n; ++i)
      noise[i] += src[(i + shift) % src.size()];
  }
  return noise;
}

}  // namespace

AudioBuffer AddNoise(const AudioBuffer& buf, AugmentKind kind, double snr_db,
                     uint64_t seed, std::span<const AudioBuffer> pool) {
  const double rms = Rms(buf);
  if (rms <= 0.0)
    throw std::runtime_error("augment: refusing to add noise to silent input");

  Rng rng(seed);
  std::vector<double> noise;
  switch (kind) {
    case AugmentKind::kWhiteNoise:
      noise = WhiteNoise(buf.samples.size(), rng);
      break;
    case AugmentKind::kPinkNoise:
      noise = PinkNoise(buf.samples.size(), rng);
      break;
    case AugmentKind::kBabble:
      noise = BabbleNoise(buf.samples.size(), rng, pool);
      break;
    default:
      throw std::runtime_error("augment: not a noise kind");
  }

  const double noise_power = MeanPower(noise);
  if (noise_power <= 0.0)
    throw std::runtime_error("augment: generated noise is silent");
  // 10 log10(P_x / P_{gn}) = snr_db  =>  g = sqrt(P_x / (P_n 10^(snr/10)))
  const double gain =
      std::sqrt(rms * rms / (noise_power * std::pow(10.0, snr_db / 10.0)));

  AudioBuffer out;
  out.sample_rate = buf.sample_rate;
  out.samples.resize(buf.samples.size());
  for (size_t i = 0; i < buf.samples.size(); ++i) {
    double v = buf.samples[i] + gain * noise[i];
    out.samples[i] = static_cast<float>(std::clamp(v, -4.0, 4.0));
  }
  return out;
}

std::vector<float> SynthRir(double rt60_s, int sample_rate, uint64_t seed) {
  if (!(rt60_s > 0.0) || rt60_s > 2.0)
    throw std::runtime_error("augment: rt60_s must be in (0, 2]");
  if (sample_rate <= 0)
    throw std::runtime_error("augment: invalid sample rate");
  const size_t n =
      std::max<size_t>(1, static_cast<size_t>(1.5 * rt60_s * sample_rate));
  // Amplitude envelope exp(-a t) with 20 log10 e^{-a rt60} = -60 dB.
  const double decay = 3.0 * std::log(10.0) / rt60_s;
  Rng rng(seed);
  std::vector<float> rir(n);
  double peak = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / sample_rate;
    const double v = rng.Gaussian() * std::exp(-decay * t);
    rir[i] = static_cast<float>(v);
    peak = std::max(peak, std::abs(v));
  }
  if (peak > 0.0)
    for (auto& v : rir) v = static_cast<float>(v / peak);
  return rir;
}

AudioBuffer ApplyReverb(const AudioBuffer& buf, std::span<const float> rir) {
  if (buf.Empty()) throw std::runtime_error("augment: empty buffer");
  if (rir.empty()) throw std::runtime_error("augment: empty impulse response");

  double in_peak = 0.0;
  for (float s : buf.samples) in_peak = std::max(in_peak, std::abs(double(s)));

  std::vector<double> conv;
  if (rir.size() == 1) {
    conv.assign(buf.samples.begin(), buf.samples.end());
    for (auto& v : conv) v *= rir[0];
  } else {
    conv = FftConvolve(buf.samples, rir);
  }
  conv.resize(buf.samples.size());

  double out_peak = 0.0;
  for (double v : conv) out_peak = std::max(out_peak, std::abs(v));
  const double scale = out_peak > 0.0 ? in_peak / out_peak : 1.0;

  AudioBuffer out;
  out.sample_rate = buf.sample_rate;
  out.samples.resize(conv.size());
  for (size_t i = 0; i < conv.size(); ++i)
    out.samples[i] = static_cast<float>(conv[i] * scale);
  return out;
}

std::vector<AugmentPlanEntry> MakeAugmentPlan(
    const std::vector<std::string>& train_ids, uint64_t seed) {
  if (train_ids.empty())
    throw std::runtime_error("augment: empty training list");
  static const AugmentKind kKinds[] = {
      AugmentKind::kWhiteNoise, AugmentKind::kPinkNoise, AugmentKind::kBabble,
      AugmentKind::kReverb};
  static const double kSnrChoices[] = {0.0, 5.0, 10.0, 15.0, 20.0};

  std::vector<AugmentPlanEntry> plan;
  plan.reserve(train_ids.size() * 5);
  for (const auto& id : train_ids) {
    AugmentPlanEntry identity;
    identity.utterance_id = id;
    identity.source_id = id;
    identity.spec.kind = AugmentKind::kIdentity;
    identity.spec.seed = 0;
    plan.push_back(std::move(identity));
    for (int fold = 1; fold <= 4; ++fold) {
      Rng rng(DeriveSeed(seed, id, static_cast<uint64_t>(fold)));
      AugmentPlanEntry e;
      e.utterance_id = id + "#aug" + std::to_string(fold);
      e.source_id = id;
      e.spec.kind = kKinds[rng.UniformInt(4)];
      e.spec.snr_db = kSnrChoices[rng.UniformInt(5)];
      e.spec.rt60_s = rng.Uniform(0.2, 0.8);
      e.spec.seed = rng.NextU64();
      e.spec.Validate();
      plan.push_back(std::move(e));
    }
  }
  return plan;
}

AudioBuffer ApplyAugment(const AudioBuffer& buf, const AugmentSpec& spec,
                         std::span<const AudioBuffer> pool) {
  spec.Validate();
  switch (spec.kind) {
    case AugmentKind::kIdentity:
      return buf;
    case AugmentKind::kReverb:
      return ApplyReverb(buf, SynthRir(spec.rt60_s, buf.sample_rate, spec.seed));
    default:
      return AddNoise(buf, spec.kind, spec.snr_db, spec.seed, pool);
  }
}

}  // namespace cqser
