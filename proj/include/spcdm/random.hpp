// Copyright 2026 The SPCDM Authors
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

#ifndef SPCDM_RANDOM_HPP_
#define SPCDM_RANDOM_HPP_

#include <cstdint>
#include <unordered_map>
#include <vector>

namespace spcdm {

// SplitMix64 stream. Output is fully specified, so every draw built on it is
// reproducible across platforms and standard libraries (unlike the
// <random> distributions, whose algorithms are implementation-defined).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform integer in [0, bound), Lemire's multiply-shift with rejection.
  std::uint64_t below(std::uint64_t bound) {
    std::uint64_t x = next();
    __uint128_t prod = static_cast<__uint128_t>(x) * bound;
    auto low = static_cast<std::uint64_t>(prod);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        x = next();
        prod = static_cast<__uint128_t>(x) * bound;
        low = static_cast<std::uint64_t>(prod);
      }
    }
    return static_cast<std::uint64_t>(prod >> 64);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

 private:
  std::uint64_t state_;
};

// Counter-based seed derivation: a stream for (seed, counter) that does not
// depend on any other stream having been consumed.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t counter) {
  SplitMix64 a(seed ^ 0x6A09E667F3BCC909ULL);
  const std::uint64_t s = a.next();
  SplitMix64 b(s + counter * 0xD1B54A32D192ED03ULL);
  return b.next();
}

// k distinct values from [0, n), partial Fisher-Yates over a virtual pool.
// Only displaced slots are stored, so the cost is O(k) regardless of n.
// Returned in draw order (not sorted).
inline std::vector<std::uint64_t> sample_without_replacement(std::uint64_t n, std::uint64_t k,
                                                             SplitMix64& rng) {
  std::vector<std::uint64_t> out;
  out.reserve(k);
  std::unordered_map<std::uint64_t, std::uint64_t> displaced;
  displaced.reserve(2 * k);
  auto slot = [&](std::uint64_t i) {
    auto it = displaced.find(i);
    return it == displaced.end() ? i : it->second;
  };
  for (std::uint64_t i = 0; i < k; ++i) {
    const std::uint64_t j = i + rng.below(n - i);
    const std::uint64_t vj = slot(j);
    const std::uint64_t vi = slot(i);
    displaced[j] = vi;
    out.push_back(vj);
  }
  return out;
}

}  // namespace spcdm

#endif  // SPCDM_RANDOM_HPP_
