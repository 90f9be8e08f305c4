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

#include "spcdm/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "spcdm/random.hpp"

namespace spcdm {

void SamplingSpec::validate() const {
  if (tau < 1 || tau > n) {
    throw std::invalid_argument("sampling needs 1 <= tau <= n, got tau=" + std::to_string(tau) +
                                ", n=" + std::to_string(n));
  }
}

std::vector<std::size_t> draw(const SamplingSpec& spec, std::uint64_t round) {
  spec.validate();
  std::vector<std::size_t> subset;
  if (spec.tau == spec.n) {
    subset.resize(spec.n);
    std::iota(subset.begin(), subset.end(), std::size_t{0});
    return subset;
  }
  SplitMix64 rng(mix_seed(spec.seed, round));
  const auto picked = sample_without_replacement(spec.n, spec.tau, rng);
  subset.assign(picked.begin(), picked.end());
  std::sort(subset.begin(), subset.end());
  return subset;
}

double log_binomial(std::size_t n, std::size_t k) {
  if (k > n) return -INFINITY;
  const std::size_t small = std::min(k, n - k);
  // lgamma(n+1) is O(n log n) in magnitude, so differencing three of them
  // loses ~log10(n) digits. Summing log1p terms keeps the relative error at a
  // few ulps whenever the shorter product is affordable.
  constexpr std::size_t kExactLimit = 4096;
  if (small <= kExactLimit) {
    const double rest = static_cast<double>(n - small);
    double acc = 0.0;
    for (std::size_t i = 1; i <= small; ++i) acc += std::log1p(rest / static_cast<double>(i));
    return acc;
  }
  return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

double hypergeom_pmf(std::size_t omega, std::size_t n, std::size_t tau, long long l) {
  if (omega > n || tau > n || l < 0) return 0.0;
  const auto ul = static_cast<std::size_t>(l);
  if (ul > omega || ul > tau || tau - ul > n - omega) return 0.0;
  return std::exp(log_binomial(omega, ul) + log_binomial(n - omega, tau - ul) -
                  log_binomial(n, tau));
}

double expected_intersection_sq(std::size_t j_size, std::size_t n, std::size_t tau) {
  const double j = static_cast<double>(j_size);
  const double t = static_cast<double>(tau);
  const double nn = static_cast<double>(n);
  const double denom = std::max(1.0, nn - 1.0);
  return (j * t / nn) * (1.0 + (j - 1.0) * (t - 1.0) / denom);
}

double max_expected_intersection_indicator(std::size_t j_size, std::size_t n, std::size_t tau) {
  if (j_size == 0) return 0.0;
  const double j = static_cast<double>(j_size);
  const double t = static_cast<double>(tau);
  const double nn = static_cast<double>(n);
  return (t / nn) * (1.0 + (j - 1.0) * (t - 1.0) / std::max(1.0, nn - 1.0));
}

}  // namespace spcdm
