// cqser/util/rng.h

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

#ifndef CQSER_UTIL_RNG_H_
#define CQSER_UTIL_RNG_H_

#include <array>
#include <cmath>
#include <cstdint>
#include <string_view>
#include <vector>

#include "cqser/util/hash.h"

namespace cqser {

// xoshiro256++ with splitmix64 seeding. We roll our own generator instead of
// using <random> distributions because the standard leaves their sequences
// implementation-defined; every sampled value here must be reproducible from
// a seed, across builds, for experiment reruns to be byte-identical.
class Rng {
 public:
  explicit Rng(uint64_t seed = 0) { Seed(seed); }

  void Seed(uint64_t seed) {
    uint64_t x = seed;
    for (auto& w : state_) {
      x += 0x9e3779b97f4a7c15ull;
      uint64_t z = x;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
      w = z ^ (z >> 31);
    }
  }

  uint64_t NextU64() {
    const uint64_t result = Rotl(state_[0] + state_[3], 23) + state_[0];
    const uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = Rotl(state_[3], 45);
    return result;
  }

  // Uniform in [0, 1), 53-bit resolution.
  double Uniform() { return (NextU64() >> 11) * 0x1.0p-53; }

  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }

  // Uniform integer in [0, n). n must be > 0.
  uint64_t UniformInt(uint64_t n) {
    // Rejection sampling to avoid modulo bias.
    uint64_t threshold = (-n) % n;
    for (;;) {
      uint64_t r = NextU64();
      if (r >= threshold) return r % n;
    }
  }

  // Standard normal via Box-Muller (no cached spare, so the state is just
  // the four generator words).
  double Gaussian() {
    double u1 = 1.0 - Uniform();  // (0, 1]
    double u2 = Uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.14159265358979323846 * u2);
  }

  template <typename T>
  void Shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(UniformInt(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  std::array<uint64_t, 4> state() const { return state_; }
  void set_state(const std::array<uint64_t, 4>& s) { state_ = s; }

 private:
  static uint64_t Rotl(uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::array<uint64_t, 4> state_{};
};

// Derives a child seed from a base seed plus a string tag and an index,
// e.g. per-(utterance, fold) augmentation seeds.
inline uint64_t DeriveSeed(uint64_t base, std::string_view tag,
                           uint64_t index = 0) {
  uint64_t h = Fnv1a64(tag, 0xcbf29ce484222325ull ^ base);
  return HashCombine(h, index);
}

}  // namespace cqser

#endif  // CQSER_UTIL_RNG_H_
