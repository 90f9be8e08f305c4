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

#ifndef SPCDM_SOLVER_HPP_
#define SPCDM_SOLVER_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spcdm/eso.hpp"
#include "spcdm/smoothing.hpp"

namespace spcdm {

/// Separable regularizer Psi(x) = sum_i Psi_i(x_i).
struct Regularizer {
  enum class Kind { none, l1, box, ridge };

  Kind kind = Kind::none;
  double lambda = 0.0;  // l1: lambda |t|
  double lo = 0.0;      // box: indicator of [lo, hi]
  double hi = 0.0;
  double delta = 0.0;  // ridge: (delta / 2) w_i t^2

  static Regularizer none() { return {}; }
  static Regularizer l1(double lambda);
  static Regularizer box(double lo, double hi);
  static Regularizer ridge(double delta);

  /// Psi_i(t) for a coordinate with primal weight w_i; +inf outside a box.
  double value(double t, double w_i) const;
  /// Strong convexity modulus of Psi with respect to ||.||_{w*}.
  double strong_convexity() const { return kind == Kind::ridge ? delta : 0.0; }
};

std::string to_string(const Regularizer& reg);

/// argmin_t grad_i t + (beta w_i / 2) t^2 + Psi_i(x_i + t), in closed form.
double prox_step(double grad_i, double x_i, double beta, double w_i, const Regularizer& reg);

struct SolverConfig {
  std::size_t tau = 1;
  std::uint64_t seed = 0;
  /// Formula for beta'. Unset: beta2 for p = 2 losses, beta3 for p = 1.
  std::optional<BetaFormula> beta_formula;
  /// Replaces the formula value of beta' when set.
  std::optional<double> beta_override;
  std::size_t max_epochs = 1000;
  /// Stop once a traced F_mu value is <= target_value.
  std::optional<double> target_value;
  std::size_t trace_every = 1;
  std::size_t workers = 1;
  /// Full recompute of the smoothed state every this many coordinate
  /// updates; 0 means "number of active coordinates".
  std::size_t recompute_period = 0;
};

struct TracePoint {
  std::size_t epoch;
  double value;
};

/// Result of a run. One epoch is one iteration of the method: draw a tau-subset,
/// compute all its steps against the current state, apply them.
struct RunReport {
  std::size_t epochs_run = 0;
  std::size_t coordinate_updates = 0;
  std::vector<TracePoint> objective_trace;
  double wall_time = 0.0;
  double final_value = 0.0;
  double final_x_norm = 0.0;
  std::size_t final_x_nnz = 0;
  bool target_reached = false;

  EsoParams eso;
  std::size_t omega = 0;
  std::size_t active_columns = 0;
  SolverConfig config;
  std::vector<double> x;
};

/// F_mu at the iterate = smoothed loss + regularizer.
double objective(const SmoothState& state, const Regularizer& reg, std::span<const double> w);

/// ESO parameters for the loss and sampling size: w = w* on the loss's
/// effective matrix, beta' from the requested formula evaluated with n = the
/// number of active columns and m = the number of effective rows.
struct EsoSetup {
  DualWeights dual;
  PrimalWeights primal;
  EsoParams params;
  std::size_t omega = 0;
};

EsoSetup eso_setup(const SmoothedLoss& loss, std::size_t tau,
                   std::optional<BetaFormula> formula = std::nullopt,
                   std::optional<double> beta_override = std::nullopt);

BetaFormula default_beta_formula(const SmoothedLoss& loss);

/// Runs the smoothed parallel coordinate descent method from x0 (zero when
/// empty). Throws std::runtime_error if the objective becomes non-finite.
RunReport run(const SmoothedLoss& loss, const Regularizer& reg, const SolverConfig& cfg,
              std::vector<double> x0 = {});

/// mu = eps' / (2 D).
double choose_mu(double eps_prime, double D);

enum class BoundCase { strongly_convex, convex };

struct SmoothedBoundParams {
  double n = 1;
  double tau = 1;
  double beta_prime = 1;
  double mu = 1;
  double sigma = 1;
  double eps = 1;
  double rho = 0.1;
  double initial_gap = 1;     // F_mu(x0) - min F_mu
  double sigma_f = 0;         // strong convexity of f_mu wrt ||.||_{w*}
  double sigma_psi = 0;       // strong convexity of Psi wrt ||.||_{w*}
  double level_diameter = 0;  // convex case only, supplied by the caller
  std::optional<double> omega;
};

struct NonsmoothBoundParams {
  double n = 1;
  double tau = 1;
  double beta_prime = 1;
  double sigma = 1;
  double D = 1;
  double eps_prime = 1;
  double rho = 0.1;
  double initial_gap = 1;  // F(x0) - min F
  double sigma_f = 0;
  double sigma_psi = 0;
  double level_diameter = 0;
  std::optional<double> omega;
};

struct IterationBound {
  double iterations = 0;
  std::vector<std::string> warnings;
};

IterationBound iter_bound_smoothed(BoundCase which, const SmoothedBoundParams& p);
IterationBound iter_bound_nonsmooth(BoundCase which, const NonsmoothBoundParams& p);

}  // namespace spcdm

#endif  // SPCDM_SOLVER_HPP_
