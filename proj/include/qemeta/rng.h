// Copyright 2026 The qemeta Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Keyed (counter-based) randomness. Every draw is a pure function of
// (seed, stream, key), so results never depend on evaluation order or on
// how work is split across threads.

#ifndef QEMETA_RNG_H_
#define QEMETA_RNG_H_

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>

namespace qemeta {

constexpr std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// 64-bit FNV-1a.
constexpr std::uint64_t HashString(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ULL;
  }
  return h;
}

constexpr std::uint64_t HashCombine(std::uint64_t a, std::uint64_t b) {
  return SplitMix64(a ^ (SplitMix64(b) + 0x632BE59BD9B4E019ULL));
}

// Uniform double in [0, 1) with 53 random bits.
constexpr double ToUnitInterval(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

class KeyedRng {
 public:
  KeyedRng(std::uint64_t seed, std::uint64_t stream)
      : base_(HashCombine(seed, stream)) {}

  std::uint64_t Bits(std::uint64_t key, std::uint64_t counter = 0) const {
    return HashCombine(HashCombine(base_, key), counter);
  }

  double Uniform(std::uint64_t key, std::uint64_t counter = 0) const {
    return ToUnitInterval(Bits(key, counter));
  }

  // Standard normal via Box-Muller on two keyed uniforms.
  double Normal(std::uint64_t key) const {
    const double u1 = 1.0 - Uniform(key, 0);  // (0, 1]
    const double u2 = Uniform(key, 1);
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::uint64_t base_;
};

}  // namespace qemeta

#endif  // QEMETA_RNG_H_
