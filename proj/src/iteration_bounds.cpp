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
#include <sstream>
#include <stdexcept>

#include "spcdm/solver.hpp"

namespace spcdm {

namespace {

// Round up, ignoring relative noise at the level of a few ulps so that an
// exact integer computed as 1.0000000000000002 stays 1.
double ceil_count(double k) {
  return std::max(0.0, std::ceil(k - 1e-12 * std::max(1.0, std::abs(k))));
}

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

void check_common(double n, double tau, double beta_prime, double sigma, double rho) {
  require(n >= 1 && tau >= 1 && tau <= n, "need 1 <= tau <= n");
  require(beta_prime > 0, "beta' must be positive");
  require(sigma > 0, "sigma must be positive");
  require(rho > 0 && rho < 1, "confidence level rho must lie in (0, 1)");
}

void warn_beta_choice(const std::optional<double>& omega, double tau, double beta_prime,
                      std::vector<std::string>& warnings) {
  if (!omega) return;
  const double required = std::min(*omega, tau);
  if (std::abs(beta_prime - required) > 1e-12 * required) {
    std::ostringstream msg;
    msg << "convex-case bound is stated for beta' = min{omega, tau} = " << required
        << "; using beta' = " << beta_prime;
    warnings.push_back(msg.str());
  }
}

}  // namespace

double choose_mu(double eps_prime, double D) {
  if (!(eps_prime > 0.0)) throw std::invalid_argument("eps' must be positive");
  if (!(D > 0.0)) throw std::invalid_argument("D must be positive: nothing to smooth against");
  return eps_prime / (2.0 * D);
}

IterationBound iter_bound_smoothed(BoundCase which, const SmoothedBoundParams& p) {
  check_common(p.n, p.tau, p.beta_prime, p.sigma, p.rho);
  require(p.mu > 0, "mu must be positive");
  require(p.eps > 0 && p.eps < p.initial_gap, "need 0 < eps < F_mu(x0) - min F_mu");
  const double log_term = std::log(p.initial_gap / (p.eps * p.rho));

  IterationBound out;
  if (which == BoundCase::strongly_convex) {
    const double convexity = p.sigma_f + p.sigma_psi;
    require(convexity > 0, "strongly convex case needs sigma_f + sigma_psi > 0");
    const double ratio = (p.beta_prime / (p.mu * p.sigma) + p.sigma_psi) / convexity;
    out.iterations = ceil_count(p.n / p.tau * ratio * log_term);
    return out;
  }
  const double beta = p.beta_prime / (p.sigma * p.mu);
  require(p.eps < 2.0 * p.n * beta / p.tau, "convex case needs eps < 2 n beta / tau");
  require(p.level_diameter > 0, "convex case needs a positive level-set diameter");
  warn_beta_choice(p.omega, p.tau, p.beta_prime, out.warnings);
  const double factor = 2.0 * p.level_diameter * p.level_diameter / (p.mu * p.sigma * p.eps);
  out.iterations = ceil_count(p.n * p.beta_prime / p.tau * factor * log_term);
  return out;
}

IterationBound iter_bound_nonsmooth(BoundCase which, const NonsmoothBoundParams& p) {
  check_common(p.n, p.tau, p.beta_prime, p.sigma, p.rho);
  require(p.D > 0, "D must be positive");
  require(p.eps_prime > 0 && p.eps_prime < p.initial_gap, "need 0 < eps' < F(x0) - min F");
  const double log_term =
      std::log((2.0 * p.initial_gap + p.eps_prime) / (p.eps_prime * p.rho));

  IterationBound out;
  if (which == BoundCase::strongly_convex) {
    const double convexity = p.sigma_f + p.sigma_psi;
    require(convexity > 0, "strongly convex case needs sigma_f + sigma_psi > 0");
    const double ratio =
        (2.0 * p.beta_prime * p.D / (p.sigma * p.eps_prime) + p.sigma_psi) / convexity;
    out.iterations = ceil_count(p.n / p.tau * ratio * log_term);
    return out;
  }
  require(p.eps_prime * p.eps_prime < 8.0 * p.n * p.D * p.beta_prime / (p.sigma * p.tau),
          "convex case needs eps'^2 < 8 n D beta' / (sigma tau)");
  require(p.level_diameter > 0, "convex case needs a positive level-set diameter");
  warn_beta_choice(p.omega, p.tau, p.beta_prime, out.warnings);
  const double factor =
      8.0 * p.D * p.level_diameter * p.level_diameter / (p.sigma * p.eps_prime * p.eps_prime);
  out.iterations = ceil_count(p.n * p.beta_prime / p.tau * factor * log_term);
  return out;
}

}  // namespace spcdm
