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

#ifndef SPCDM_SAMPLING_HPP_
#define SPCDM_SAMPLING_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

namespace spcdm {

/// Tau-nice sampling: every subset of {0..n-1} of cardinality tau is equally
/// likely.
struct SamplingSpec {
  std::size_t n = 1;
  std::size_t tau = 1;
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument unless 1 <= tau <= n.
  void validate() const;
};

/// The subset for iteration `round`, sorted ascending. A pure function of
/// (spec, round): no hidden generator state is carried between calls.
std::vector<std::size_t> draw(const SamplingSpec& spec, std::uint64_t round);

/// log C(n, k); exact summation for small min(k, n-k), log-gamma otherwise.
double log_binomial(std::size_t n, std::size_t k);

/// P(|J ∩ S| = l) for |J| = omega and S tau-nice over n blocks:
/// C(omega,l) C(n-omega,tau-l) / C(n,tau). Zero outside the support.
double hypergeom_pmf(std::size_t omega, std::size_t n, std::size_t tau, long long l);

/// E[|J ∩ S|^2] for |J| = j_size and tau-nice S, in closed form.
double expected_intersection_sq(std::size_t j_size, std::size_t n, std::size_t tau);

/// max_i E[|J ∩ S| * 1(i in S)] for tau-nice S, in closed form.
double max_expected_intersection_indicator(std::size_t j_size, std::size_t n, std::size_t tau);

}  // namespace spcdm

#endif  // SPCDM_SAMPLING_HPP_
