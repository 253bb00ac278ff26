// cqser/util/hash.h

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

#ifndef CQSER_UTIL_HASH_H_
#define CQSER_UTIL_HASH_H_

#include <cstdint>
#include <string>
#include <string_view>

namespace cqser {

// FNV-1a, 64 bit. Used for config hashes, derived RNG seeds and cache keys.
inline uint64_t Fnv1a64(std::string_view data,
                        uint64_t seed = 0xcbf29ce484222325ull) {
  uint64_t h = seed;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

inline uint64_t HashCombine(uint64_t h, uint64_t v) {
  // splitmix64-style mixing of the incoming word.
  v += 0x9e3779b97f4a7c15ull;
  v = (v ^ (v >> 30)) * 0xbf58476d1ce4e5b9ull;
  v = (v ^ (v >> 27)) * 0x94d049bb133111ebull;
  v ^= v >> 31;
  return (h ^ v) * 0x100000001b3ull;
}

inline std::string HexHash(uint64_t h) {
  static const char* kDigits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[i] = kDigits[h & 0xf];
    h >>= 4;
  }
  return s;
}

}  // namespace cqser

#endif  // CQSER_UTIL_HASH_H_
