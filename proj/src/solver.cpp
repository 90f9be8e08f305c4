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

#include "spcdm/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "spcdm/sampling.hpp"

namespace spcdm {

Regularizer Regularizer::l1(double lambda) {
  if (!(lambda >= 0.0)) throw std::invalid_argument("l1 weight must be nonnegative");
  Regularizer r;
  r.kind = Kind::l1;
  r.lambda = lambda;
  return r;
}

Regularizer Regularizer::box(double lo, double hi) {
  if (!(lo <= hi)) throw std::invalid_argument("box needs lo <= hi");
  Regularizer r;
  r.kind = Kind::box;
  r.lo = lo;
  r.hi = hi;
  return r;
}

Regularizer Regularizer::ridge(double delta) {
  if (!(delta >= 0.0)) throw std::invalid_argument("ridge weight must be nonnegative");
  Regularizer r;
  r.kind = Kind::ridge;
  r.delta = delta;
  return r;
}

double Regularizer::value(double t, double w_i) const {
  switch (kind) {
    case Kind::none: return 0.0;
    case Kind::l1: return lambda * std::abs(t);
    case Kind::box:
      return (t >= lo && t <= hi) ? 0.0 : std::numeric_limits<double>::infinity();
    case Kind::ridge: return 0.5 * delta * w_i * t * t;
  }
  return 0.0;
}

std::string to_string(const Regularizer& reg) {
  std::ostringstream out;
  out.precision(17);
  switch (reg.kind) {
    case Regularizer::Kind::none: out << "none"; break;
    case Regularizer::Kind::l1: out << "l1:" << reg.lambda; break;
    case Regularizer::Kind::box: out << "box:" << reg.lo << ':' << reg.hi; break;
    case Regularizer::Kind::ridge: out << "ridge:" << reg.delta; break;
  }
  return out.str();
}

double prox_step(double grad_i, double x_i, double beta, double w_i, const Regularizer& reg) {
  const double curvature = beta * w_i;
  switch (reg.kind) {
    case Regularizer::Kind::none: return -grad_i / curvature;
    case Regularizer::Kind::l1: {
      const double u = x_i - grad_i / curvature;
      const double shrink = reg.lambda / curvature;
      const double target = u > shrink ? u - shrink : (u < -shrink ? u + shrink : 0.0);
      return target - x_i;
    }
    case Regularizer::Kind::box:
      return std::clamp(x_i - grad_i / curvature, reg.lo, reg.hi) - x_i;
    case Regularizer::Kind::ridge:
      return -(grad_i + reg.delta * w_i * x_i) / ((beta + reg.delta) * w_i);
  }
  return 0.0;
}

double objective(const SmoothState& state, const Regularizer& reg, std::span<const double> w) {
  double psi = 0.0;
  if (reg.kind != Regularizer::Kind::none) {
    const auto x = state.x();
    for (std::size_t i = 0; i < x.size(); ++i) psi += reg.value(x[i], w[i]);
  }
  return state.value() + psi;
}

BetaFormula default_beta_formula(const SmoothedLoss& loss) {
  return loss.dual().p == 2 ? BetaFormula::beta2 : BetaFormula::beta3;
}

EsoSetup eso_setup(const SmoothedLoss& loss, std::size_t tau, std::optional<BetaFormula> formula,
                   std::optional<double> beta_override) {
  EsoSetup setup;
  setup.dual = loss.dual();
  setup.primal = primal_weights(loss.data(), setup.dual);
  setup.omega = row_sparsity(loss.data()).omega;
  const std::size_t n = setup.primal.active.size();
  if (n == 0) throw std::invalid_argument("the data matrix has no nonzero columns");
  if (tau < 1 || tau > n) {
    throw std::invalid_argument("tau must lie in [1, " + std::to_string(n) +
                                "] (the number of nonzero columns)");
  }
  const LossConstants constants = loss_constants(loss);
  if (beta_override) {
    setup.params =
        EsoParams::make(*beta_override, BetaFormula::override_value, constants.sigma, loss.mu());
  } else {
    const BetaFormula f = formula.value_or(default_beta_formula(loss));
    const double bp = beta_prime(f, setup.omega, tau, n, loss.data().rows());
    setup.params = EsoParams::make(bp, f, constants.sigma, loss.mu());
  }
  return setup;
}

RunReport run(const SmoothedLoss& loss, const Regularizer& reg, const SolverConfig& cfg,
              std::vector<double> x0) {
  const auto started = std::chrono::steady_clock::now();
  if (cfg.trace_every == 0) throw std::invalid_argument("trace_every must be positive");
  const EsoSetup setup = eso_setup(loss, cfg.tau, cfg.beta_formula, cfg.beta_override);
  const auto& w = setup.primal.w;
  const auto& active = setup.primal.active;
  const double beta = setup.params.beta;

  SmoothState state(loss, std::move(x0));
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!std::isfinite(reg.value(state.x()[i], w[i]))) {
      throw std::invalid_argument("initial iterate lies outside the regularizer's domain");
    }
  }

  RunReport report;
  report.eso = setup.params;
  report.omega = setup.omega;
  report.active_columns = active.size();
  report.config = cfg;

  const std::size_t period = cfg.recompute_period == 0 ? active.size() : cfg.recompute_period;
  const int workers = static_cast<int>(std::max<std::size_t>(1, cfg.workers));
  const SamplingSpec sampling{active.size(), cfg.tau, cfg.seed};

  auto trace = [&](std::size_t epoch) {
    const double value = objective(state, reg, w);
    if (!std::isfinite(value)) {
      std::ostringstream msg;
      msg << "objective became non-finite at epoch " << epoch << " (beta = " << beta
          << ", mu = " << loss.mu() << "); beta or mu is likely too small";
      throw std::runtime_error(msg.str());
    }
    report.objective_trace.push_back({epoch, value});
    return cfg.target_value && value <= *cfg.target_value;
  };

  report.target_reached = trace(0);
  std::vector<std::size_t> blocks(cfg.tau);
  std::vector<double> steps(cfg.tau);
  std::size_t epoch = 0;
  while (!report.target_reached && epoch < cfg.max_epochs) {
    const auto positions = draw(sampling, epoch);
    ++epoch;
    for (std::size_t k = 0; k < positions.size(); ++k) blocks[k] = active[positions[k]];

    // Steps are computed against the frozen state; any worker count gives the
    // same values since each one depends only on its own block.
    const auto count = static_cast<std::ptrdiff_t>(blocks.size());
#pragma omp parallel for num_threads(workers) schedule(static) if (workers > 1)
    for (std::ptrdiff_t k = 0; k < count; ++k) {
      const std::size_t i = blocks[k];
      steps[k] = prox_step(state.partial_gradient(i), state.x()[i], beta, w[i], reg);
    }

    // Single writer, ascending block order.
    for (std::size_t k = 0; k < blocks.size(); ++k) state.apply_update(blocks[k], steps[k]);
    report.coordinate_updates += blocks.size();
    if (state.needs_recompute(period)) state.recompute();

    if (epoch % cfg.trace_every == 0 || epoch == cfg.max_epochs) report.target_reached = trace(epoch);
  }
  if (report.objective_trace.back().epoch != epoch) trace(epoch);

  report.epochs_run = epoch;
  report.final_value = report.objective_trace.back().value;
  report.x.assign(state.x().begin(), state.x().end());
  double sq = 0.0;
  for (double xi : report.x) {
    sq += xi * xi;
    report.final_x_nnz += xi != 0.0;
  }
  report.final_x_norm = std::sqrt(sq);
  report.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

}  // namespace spcdm
