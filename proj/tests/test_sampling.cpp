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

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "doctest.h"
#include "oracles.hpp"
#include "spcdm/sampling.hpp"

using namespace spcdm;

namespace {

// Chi-square statistic of observed counts against equal expected counts.
double chi_square(const std::vector<std::size_t>& counts, double expected) {
  double stat = 0.0;
  for (std::size_t c : counts) {
    const double d = static_cast<double>(c) - expected;
    stat += d * d / expected;
  }
  return stat;
}

std::size_t intersection(const std::vector<std::size_t>& s, std::size_t j_size) {
  return static_cast<std::size_t>(
      std::count_if(s.begin(), s.end(), [&](std::size_t i) { return i < j_size; }));
}

}  // namespace

TEST_SUITE("sampling") {
  TEST_CASE("tau = n returns every index") {
    const SamplingSpec spec{7, 7, 3};
    for (std::uint64_t round = 0; round < 5; ++round) {
      CHECK(draw(spec, round) == std::vector<std::size_t>{0, 1, 2, 3, 4, 5, 6});
    }
  }

  TEST_CASE("draws are sorted, distinct and in range") {
    const SamplingSpec spec{50, 9, 1};
    for (std::uint64_t round = 0; round < 200; ++round) {
      const auto s = draw(spec, round);
      REQUIRE(s.size() == 9);
      CHECK(std::adjacent_find(s.begin(), s.end(), std::greater_equal<>()) == s.end());
      CHECK(s.back() < 50);
    }
  }

  TEST_CASE("single index frequencies, tau = 1, n = 4") {
    const SamplingSpec spec{4, 1, 2024};
    std::vector<std::size_t> counts(4, 0);
    const std::size_t draws = 40000;
    for (std::uint64_t round = 0; round < draws; ++round) ++counts[draw(spec, round)[0]];
    for (std::size_t c : counts) {
      const double freq = static_cast<double>(c) / draws;
      const double sd = std::sqrt(0.25 * 0.75 / draws);
      CHECK(std::abs(freq - 0.25) <= 0.01 * 0.25 + 3.0 * sd);
    }
    CHECK(chi_square(counts, draws / 4.0) < 11.345);  // df 3, alpha 0.01
  }

  TEST_CASE("pair frequencies, tau = 2, n = 5") {
    const SamplingSpec spec{5, 2, 77};
    std::map<std::vector<std::size_t>, std::size_t> seen;
    const std::size_t draws = 100000;
    for (std::uint64_t round = 0; round < draws; ++round) ++seen[draw(spec, round)];
    REQUIRE(seen.size() == 10);
    std::vector<std::size_t> counts;
    for (const auto& [subset, c] : seen) {
      counts.push_back(c);
      CHECK(static_cast<double>(c) / draws == doctest::Approx(0.1).epsilon(0.05));
    }
    CHECK(chi_square(counts, draws / 10.0) < 21.666);  // df 9, alpha 0.01
  }

  TEST_CASE("draw is a pure function of seed and round") {
    const SamplingSpec spec{1000, 31, 99};
    CHECK(draw(spec, 12) == draw(spec, 12));
    CHECK(draw(spec, 12) != draw(spec, 13));
    CHECK(draw(spec, 12) != draw(SamplingSpec{1000, 31, 100}, 12));
  }

  TEST_CASE("invalid specs") {
    CHECK_THROWS_AS(draw(SamplingSpec{4, 0, 0}, 0), std::invalid_argument);
    CHECK_THROWS_AS(draw(SamplingSpec{4, 5, 0}, 0), std::invalid_argument);
  }

  TEST_CASE("hypergeom_pmf examples") {
    CHECK(hypergeom_pmf(2, 5, 2, 0) == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(hypergeom_pmf(2, 5, 2, 1) == doctest::Approx(0.6).epsilon(1e-14));
    CHECK(hypergeom_pmf(2, 5, 2, 2) == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(hypergeom_pmf(2, 5, 2, 3) == 0.0);
    CHECK(hypergeom_pmf(2, 5, 2, -1) == 0.0);
    for (std::size_t tau = 1; tau <= 9; ++tau) {
      CHECK(hypergeom_pmf(9, 9, tau, static_cast<long long>(tau)) ==
            doctest::Approx(1.0).epsilon(1e-14));
    }
  }

  TEST_CASE("hypergeom_pmf sums to one at benchmark scale") {
    for (std::size_t tau : {1u, 4u, 16u, 64u, 1024u}) {
      double total = 0.0, mean = 0.0;
      for (long long l = 0; l <= static_cast<long long>(tau); ++l) {
        const double p = hypergeom_pmf(6061, 100000, tau, l);
        total += p;
        mean += static_cast<double>(l) * p;
      }
      CHECK(std::abs(total - 1.0) <= (tau <= 64 ? 1e-12 : 1e-10));
      CHECK(mean == doctest::Approx(6061.0 * tau / 100000.0).epsilon(1e-10));
    }
  }

  TEST_CASE("log_binomial against exact small values") {
    CHECK(std::exp(log_binomial(5, 2)) == doctest::Approx(10.0).epsilon(1e-14));
    CHECK(std::exp(log_binomial(30, 15)) == doctest::Approx(155117520.0).epsilon(1e-13));
    CHECK(log_binomial(7, 0) == 0.0);
    CHECK(log_binomial(3, 4) == -INFINITY);
    // Both evaluation paths agree where they overlap in accuracy.
    const double big = log_binomial(3231961, 5000);
    const double via_lgamma = std::lgamma(3231962.0) - std::lgamma(5001.0) - std::lgamma(3226962.0);
    CHECK(big == doctest::Approx(via_lgamma).epsilon(1e-9));
  }

  TEST_CASE("pmf moments for all small triples") {
    for (std::size_t n = 1; n <= 20; ++n)
      for (std::size_t tau = 1; tau <= n; ++tau)
        for (std::size_t omega = 1; omega <= n; ++omega) {
          double total = 0.0, mean = 0.0, second = 0.0;
          for (long long l = 0; l <= static_cast<long long>(tau); ++l) {
            const double p = hypergeom_pmf(omega, n, tau, l);
            total += p;
            mean += static_cast<double>(l) * p;
            second += static_cast<double>(l * l) * p;
          }
          CHECK(std::abs(total - 1.0) <= 1e-10);
          CHECK(std::abs(mean - static_cast<double>(omega * tau) / n) <= 1e-10);
          CHECK(std::abs(second - expected_intersection_sq(omega, n, tau)) <= 1e-9);
        }
  }

  TEST_CASE("expected_intersection_sq examples") {
    CHECK(expected_intersection_sq(2, 5, 2) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(expected_intersection_sq(0, 5, 2) == 0.0);
    for (std::size_t n = 1; n <= 10; ++n)
      CHECK(expected_intersection_sq(n, n, n) == doctest::Approx(double(n * n)).epsilon(1e-14));
  }

  TEST_CASE("second moment and indicator moment by exhaustive enumeration") {
    for (std::size_t n = 1; n <= 8; ++n)
      for (std::size_t tau = 1; tau <= n; ++tau) {
        const auto all = oracle::subsets(n, tau);
        const double count = static_cast<double>(all.size());
        for (std::size_t j = 1; j <= n; ++j) {
          // J = {0, ..., j-1}; every J of a given size is equivalent by symmetry.
          double second = 0.0;
          std::vector<double> with_i(n, 0.0);
          for (const auto& s : all) {
            const double k = static_cast<double>(intersection(s, j));
            second += k * k;
            for (std::size_t i : s) with_i[i] += k;
          }
          CHECK(second / count == doctest::Approx(expected_intersection_sq(j, n, tau)).epsilon(1e-12));
          const double best = *std::max_element(with_i.begin(), with_i.end()) / count;
          CHECK(best == doctest::Approx(max_expected_intersection_indicator(j, n, tau)).epsilon(1e-12));
        }
      }
  }

  TEST_CASE("sample_without_replacement covers the full range") {
    SplitMix64 rng(1);
    auto all = sample_without_replacement(20, 20, rng);
    std::sort(all.begin(), all.end());
    std::vector<std::size_t> expect(20);
    std::iota(expect.begin(), expect.end(), std::size_t{0});
    CHECK(std::equal(all.begin(), all.end(), expect.begin()));
  }
}
