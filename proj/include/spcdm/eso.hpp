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

#ifndef SPCDM_ESO_HPP_
#define SPCDM_ESO_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "spcdm/problem_data.hpp"

// Stepsize parameters of the expected separable overapproximation
//
//   E[f(x + h_[S])] <= f(x) + (tau/n) (<grad f(x), h> + (beta/2) sum_i w_i h_i^2)
//
// for smoothed Nesterov-separable losses f(x) = max_z <Ax, z> - g(z) - mu d(z).
// The dual space carries the weighted p-norm ||z||_v = (sum_j v_j^p |z_j|^p)^(1/p)
// with p in {1, 2}; the primal weights w* normalize every column to unit
// operator norm, and beta = beta' / (sigma mu).

namespace spcdm {

enum class Application { linf, l1, adaboost };

std::string to_string(Application app);
Application application_from_string(const std::string& name);

struct DualWeights {
  std::vector<double> v;
  int p = 1;
};

struct PrimalWeights {
  std::vector<double> w;
  /// Columns with at least one nonzero; all others have w = 0 and are never
  /// sampled.
  std::vector<std::size_t> active;
};

enum class BetaFormula { beta1, beta2, beta3, override_value };

std::string to_string(BetaFormula formula);

struct EsoParams {
  double beta_prime = 1.0;
  BetaFormula formula = BetaFormula::beta2;
  double sigma = 1.0;
  double mu = 1.0;
  double beta = 1.0;

  static EsoParams make(double beta_prime, BetaFormula formula, double sigma, double mu);
};

/// linf/adaboost: p = 1, v = 1. l1: p = 2, v_j = sum_i A_ji^2.
/// For l1 a row without nonzeros would get weight zero and throws.
DualWeights dual_weights(const ProblemData& pd, Application app);

/// w_i = max_j A_ji^2 / v_j^2 (p = 1) or sum_j A_ji^2 / v_j^2 (p = 2).
PrimalWeights primal_weights(const ProblemData& pd, const DualWeights& dw);

/// tau-uniform samplings: min{omega, tau}.
double beta1(std::size_t omega, std::size_t tau);
/// tau-nice samplings, p = 2: 1 + (omega-1)(tau-1)/max(1, n-1).
double beta2(std::size_t omega, std::size_t tau, std::size_t n);
/// tau-nice samplings, p = 1:
///   sum_{k=1}^{kmax} min{1, (m n / tau) sum_{l=max(k,kmin)}^{kmax} c_l pi_l}
/// with kmin = max(1, tau-(n-omega)), kmax = min(tau, omega),
/// c_l = max(l/omega, (tau-l)/(n-omega)) (l/omega when omega = n) and pi_l the
/// hypergeometric pmf.
double beta3(std::size_t omega, std::size_t tau, std::size_t n, std::size_t m);

double beta_prime(BetaFormula formula, std::size_t omega, std::size_t tau, std::size_t n,
                  std::size_t m);

/// max_j |support(row j) ∩ S|.
std::size_t subspace_lipschitz(const ProblemData& pd, std::span<const std::size_t> subset);

/// Largest squared singular value of diag(v)^-1 A[:, S] diag(w)^-1/2 by power
/// iteration (three random starts, relative residual 1e-9, at most 10000
/// iterations each). Test-scale only: builds a dense m x |S| matrix.
double operator_norm_oracle(const ProblemData& pd, std::span<const std::size_t> subset,
                            std::span<const double> w, std::span<const double> v);

}  // namespace spcdm

#endif  // SPCDM_ESO_HPP_
