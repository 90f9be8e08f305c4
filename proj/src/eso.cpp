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

#include "spcdm/eso.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

#include "spcdm/random.hpp"
#include "spcdm/sampling.hpp"

namespace spcdm {

std::string to_string(Application app) {
  switch (app) {
    case Application::linf: return "linf";
    case Application::l1: return "l1";
    case Application::adaboost: return "adaboost";
  }
  return "unknown";
}

Application application_from_string(const std::string& name) {
  if (name == "linf") return Application::linf;
  if (name == "l1") return Application::l1;
  if (name == "adaboost") return Application::adaboost;
  throw std::invalid_argument("unknown application '" + name + "' (expected linf, l1, adaboost)");
}

std::string to_string(BetaFormula formula) {
  switch (formula) {
    case BetaFormula::beta1: return "beta1";
    case BetaFormula::beta2: return "beta2";
    case BetaFormula::beta3: return "beta3";
    case BetaFormula::override_value: return "override";
  }
  return "unknown";
}

EsoParams EsoParams::make(double beta_prime, BetaFormula formula, double sigma, double mu) {
  if (!(sigma > 0.0) || !(mu > 0.0)) throw std::invalid_argument("sigma and mu must be positive");
  if (!(beta_prime > 0.0)) throw std::invalid_argument("beta' must be positive");
  return {beta_prime, formula, sigma, mu, beta_prime / (sigma * mu)};
}

DualWeights dual_weights(const ProblemData& pd, Application app) {
  DualWeights dw;
  if (app != Application::l1) {
    dw.p = 1;
    dw.v.assign(pd.rows(), 1.0);
    return dw;
  }
  dw.p = 2;
  dw.v.resize(pd.rows());
  for (std::size_t j = 0; j < pd.rows(); ++j) {
    double sq = 0.0;
    for (double a : pd.row(j).value) sq += a * a;
    if (sq == 0.0) {
      throw std::invalid_argument("row " + std::to_string(j) +
                                  " has no nonzeros; its l1 dual weight would be zero");
    }
    dw.v[j] = sq;
  }
  return dw;
}

PrimalWeights primal_weights(const ProblemData& pd, const DualWeights& dw) {
  if (dw.p != 1 && dw.p != 2) throw std::invalid_argument("dual norm exponent must be 1 or 2");
  if (dw.v.size() != pd.rows()) throw std::invalid_argument("dual weight length mismatch");
  PrimalWeights pw;
  pw.w.assign(pd.cols(), 0.0);
  for (std::size_t i = 0; i < pd.cols(); ++i) {
    const auto col = pd.column(i);
    if (col.empty()) continue;
    double acc = 0.0;
    for (std::size_t k = 0; k < col.size(); ++k) {
      const double vj = dw.v[col.index[k]];
      const double term = col.value[k] * col.value[k] / (vj * vj);
      acc = dw.p == 1 ? std::max(acc, term) : acc + term;
    }
    pw.w[i] = acc;
    pw.active.push_back(i);
  }
  return pw;
}

double beta1(std::size_t omega, std::size_t tau) {
  return static_cast<double>(std::min(omega, tau));
}

double beta2(std::size_t omega, std::size_t tau, std::size_t n) {
  const double denom = std::max(1.0, static_cast<double>(n) - 1.0);
  return 1.0 + (static_cast<double>(omega) - 1.0) * (static_cast<double>(tau) - 1.0) / denom;
}

double beta3(std::size_t omega, std::size_t tau, std::size_t n, std::size_t m) {
  if (omega < 1 || tau < 1 || omega > n || tau > n || m < 1) {
    throw std::invalid_argument("beta3 needs 1 <= omega, tau <= n and m >= 1");
  }
  const std::size_t k_min = tau > n - omega ? std::max<std::size_t>(1, tau - (n - omega)) : 1;
  const std::size_t k_max = std::min(tau, omega);
  const double w = static_cast<double>(omega);
  const double t = static_cast<double>(tau);

  // suffix[k] = sum_{l = max(k, kmin)}^{kmax} c_l pi_l
  std::vector<double> suffix(k_max + 2, 0.0);
  for (std::size_t l = k_max; l >= 1; --l) {
    double term = 0.0;
    if (l >= k_min) {
      const double dl = static_cast<double>(l);
      double c = dl / w;
      if (omega < n) c = std::max(c, (t - dl) / static_cast<double>(n - omega));
      assert(c <= 1.0 + 1e-12);
      c = std::clamp(c, 0.0, 1.0);
      term = c * hypergeom_pmf(omega, n, tau, static_cast<long long>(l));
    }
    suffix[l] = suffix[l + 1] + term;
  }

  const double scale = static_cast<double>(m) * static_cast<double>(n) / t;
  double total = 0.0;
  for (std::size_t k = 1; k <= k_max; ++k) total += std::min(1.0, scale * suffix[k]);
  return total;
}

double beta_prime(BetaFormula formula, std::size_t omega, std::size_t tau, std::size_t n,
                  std::size_t m) {
  switch (formula) {
    case BetaFormula::beta1: return beta1(omega, tau);
    case BetaFormula::beta2: return beta2(omega, tau, n);
    case BetaFormula::beta3: return beta3(omega, tau, n, m);
    case BetaFormula::override_value: break;
  }
  throw std::invalid_argument("an overridden beta' has no formula to evaluate");
}

std::size_t subspace_lipschitz(const ProblemData& pd, std::span<const std::size_t> subset) {
  std::vector<char> in_subset(pd.cols(), 0);
  for (std::size_t i : subset) {
    if (i >= pd.cols()) throw std::invalid_argument("block index out of range");
    in_subset[i] = 1;
  }
  std::size_t best = 0;
  for (std::size_t j = 0; j < pd.rows(); ++j) {
    std::size_t count = 0;
    for (Index i : pd.row(j).index) count += in_subset[i];
    best = std::max(best, count);
  }
  return best;
}

double operator_norm_oracle(const ProblemData& pd, std::span<const std::size_t> subset,
                            std::span<const double> w, std::span<const double> v) {
  const std::size_t m = pd.rows();
  const std::size_t s = subset.size();
  if (w.size() != pd.cols() || v.size() != m) throw std::invalid_argument("weight length mismatch");
  if (s == 0 || m == 0) return 0.0;

  // Dense m x s matrix, column-major.
  std::vector<double> mat(m * s, 0.0);
  for (std::size_t c = 0; c < s; ++c) {
    const std::size_t i = subset[c];
    if (!(w[i] > 0.0)) throw std::invalid_argument("operator_norm_oracle needs w_i > 0 on S");
    const double scale = 1.0 / std::sqrt(w[i]);
    const auto col = pd.column(i);
    for (std::size_t k = 0; k < col.size(); ++k) {
      mat[c * m + col.index[k]] = col.value[k] * scale / v[col.index[k]];
    }
  }

  auto apply_normal = [&](const std::vector<double>& y, std::vector<double>& out) {
    std::vector<double> my(m, 0.0);
    for (std::size_t c = 0; c < s; ++c)
      for (std::size_t r = 0; r < m; ++r) my[r] += mat[c * m + r] * y[c];
    for (std::size_t c = 0; c < s; ++c) {
      double acc = 0.0;
      for (std::size_t r = 0; r < m; ++r) acc += mat[c * m + r] * my[r];
      out[c] = acc;
    }
  };
  auto norm = [](const std::vector<double>& a) {
    double acc = 0.0;
    for (double x : a) acc += x * x;
    return std::sqrt(acc);
  };

  constexpr double kTolerance = 1e-9;
  constexpr int kMaxIterations = 10000;
  constexpr int kRestarts = 3;
  SplitMix64 rng(0x5EED0F0AULL + s * 131 + m);
  double best = 0.0;
  std::vector<double> y(s), z(s);
  for (int restart = 0; restart < kRestarts; ++restart) {
    for (double& yi : y) yi = rng.uniform(-1.0, 1.0);
    double ny = norm(y);
    if (ny == 0.0) continue;
    for (double& yi : y) yi /= ny;

    bool converged = false;
    double lambda = 0.0;
    for (int it = 0; it < kMaxIterations; ++it) {
      apply_normal(y, z);
      lambda = 0.0;
      for (std::size_t c = 0; c < s; ++c) lambda += y[c] * z[c];
      double residual = 0.0;
      for (std::size_t c = 0; c < s; ++c) residual += (z[c] - lambda * y[c]) * (z[c] - lambda * y[c]);
      residual = std::sqrt(residual);
      const double nz = norm(z);
      if (nz == 0.0 || residual <= kTolerance * lambda) {
        converged = true;
        break;
      }
      for (std::size_t c = 0; c < s; ++c) y[c] = z[c] / nz;
    }
    if (!converged) {
      throw std::runtime_error("power iteration did not converge in 10000 iterations");
    }
    best = std::max(best, lambda);
  }
  return best;
}

}  // namespace spcdm
