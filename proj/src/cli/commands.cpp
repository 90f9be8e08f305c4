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
#include <cstdlib>
#include <exception>
#include <fstream>
#include <limits>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "spcdm/cli.hpp"
#include "spcdm/random.hpp"

namespace spcdm::cli {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) parts.push_back(item);
  return parts;
}

double to_double(const std::string& s) {
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw std::invalid_argument("not a number: '" + s + "'");
  return v;
}

std::size_t to_size(const std::string& s) {
  std::size_t used = 0;
  const unsigned long long v = std::stoull(s, &used);
  if (used != s.size()) throw std::invalid_argument("not an integer: '" + s + "'");
  return static_cast<std::size_t>(v);
}

// f >= 0 and Psi >= 0 for l1/linf with the supported regularizers, so
// F(x0) itself bounds the initial gap from above.
bool has_zero_lower_bound(Application app, const Regularizer& reg) {
  if (app == Application::adaboost) return false;
  return reg.kind != Regularizer::Kind::box || (reg.lo <= 0.0 && reg.hi >= 0.0);
}

double regularizer_total(const Regularizer& reg, std::span<const double> x,
                         std::span<const double> w) {
  double total = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) total += reg.value(x[i], w[i]);
  return total;
}

struct PreparedRun {
  SmoothedLoss loss;
  Regularizer reg;
  Application app;
  std::optional<double> target;
  double initial_value = 0.0;      // F_mu(0)
  double initial_nonsmooth = 0.0;  // F(0)
};

PreparedRun prepare(const ProblemData& pd, const std::string& app_name,
                    std::optional<double> mu, std::optional<double> eps_prime,
                    const std::string& reg_spec, std::optional<double> target,
                    std::optional<double> target_rel) {
  if (mu && eps_prime) throw std::invalid_argument("--mu and --eps are mutually exclusive");
  if (target && target_rel) {
    throw std::invalid_argument("--target and --target-rel are mutually exclusive");
  }
  const Application app = application_from_string(app_name);
  PreparedRun prep{build_loss(pd, app, mu, eps_prime), parse_regularizer(reg_spec), app,
                   std::nullopt, 0.0, 0.0};
  const std::vector<double> x0(prep.loss.data().cols(), 0.0);
  const auto w = primal_weights(prep.loss.data(), prep.loss.dual()).w;
  const double psi0 = regularizer_total(prep.reg, x0, w);
  prep.initial_value = prep.loss.smoothed_value(x0) + psi0;
  prep.initial_nonsmooth = prep.loss.nonsmooth_value(x0) + psi0;
  if (target) prep.target = target;
  if (target_rel) prep.target = *target_rel * prep.initial_value;
  return prep;
}

nlohmann::json optional_json(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

ProblemData load_dataset(const std::string& source, std::optional<std::size_t> n_cols) {
  if (source.rfind("synth:", 0) == 0) {
    const auto parts = split(source.substr(6), ':');
    if (parts.size() != 4) {
      throw std::invalid_argument("synthetic dataset must be synth:M:N:OMEGA:SEED");
    }
    return synth_problem(to_size(parts[0]), to_size(parts[1]), to_size(parts[2]),
                         to_size(parts[3]));
  }
  return load_svmlight(source, n_cols);
}

Regularizer parse_regularizer(const std::string& spec) {
  const auto parts = split(spec, ':');
  if (parts.empty() || parts[0] == "none") {
    if (parts.size() > 1) throw std::invalid_argument("regularizer 'none' takes no arguments");
    return Regularizer::none();
  }
  if (parts[0] == "l1" && parts.size() == 2) return Regularizer::l1(to_double(parts[1]));
  if (parts[0] == "ridge" && parts.size() == 2) return Regularizer::ridge(to_double(parts[1]));
  if (parts[0] == "box" && parts.size() == 3) {
    return Regularizer::box(to_double(parts[1]), to_double(parts[2]));
  }
  throw std::invalid_argument("bad regularizer '" + spec +
                              "' (expected none, l1:LAMBDA, box:LO:HI, ridge:DELTA)");
}

BetaFormula parse_beta_formula(const std::string& name) {
  if (name == "beta1") return BetaFormula::beta1;
  if (name == "beta2") return BetaFormula::beta2;
  if (name == "beta3") return BetaFormula::beta3;
  throw std::invalid_argument("unknown beta formula '" + name + "' (expected beta1, beta2, beta3)");
}

SmoothedLoss build_loss(const ProblemData& pd, Application app, std::optional<double> mu,
                        std::optional<double> eps_prime) {
  if (app == Application::adaboost) return SmoothedLoss::adaboost(pd);

  auto make = [&](double smoothing) {
    if (app == Application::linf) {
      return SmoothedLoss::linf(std::make_shared<const ProblemData>(stack_linf(pd)), smoothing);
    }
    return SmoothedLoss::l1_huber(std::make_shared<const ProblemData>(pd), smoothing,
                                  dual_weights(pd, Application::l1));
  };
  if (!eps_prime) return make(mu.value_or(1.0));
  SmoothedLoss probe = make(1.0);
  return make(choose_mu(*eps_prime, loss_constants(probe).D));
}

std::size_t resolve_workers(std::size_t requested) {
  if (const char* env = std::getenv("SPCDM_THREADS"); env != nullptr && *env != '\0') {
    const std::size_t v = to_size(env);
    if (v > 0) return v;
  }
  return std::max<std::size_t>(1, requested);
}

int run_guarded(const std::function<int()>& body, std::ostream& log) {
  try {
    return body();
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

int cmd_solve(const SolveArgs& args, std::ostream& log) {
  const ProblemData pd = load_dataset(args.dataset, args.n_cols);
  const PreparedRun prep = prepare(pd, args.app, args.mu, args.eps_prime, args.reg, args.target,
                                   args.target_rel);

  SolverConfig cfg;
  cfg.tau = args.tau;
  cfg.seed = args.seed;
  if (args.beta_formula) cfg.beta_formula = parse_beta_formula(*args.beta_formula);
  cfg.beta_override = args.beta_override;
  cfg.max_epochs = args.max_epochs;
  cfg.target_value = prep.target;
  cfg.trace_every = args.trace_every;
  cfg.workers = resolve_workers(args.workers);

  const nlohmann::json config = {
      {"command", "solve"},
      {"dataset", args.dataset},
      {"app", args.app},
      {"tau", args.tau},
      {"seed", args.seed},
      {"mu", prep.loss.mu()},
      {"eps_prime", optional_json(args.eps_prime)},
      {"reg", to_string(prep.reg)},
      {"max_epochs", args.max_epochs},
      {"target", optional_json(prep.target)},
      {"trace_every", args.trace_every},
      {"workers", cfg.workers},
  };

  RunReport report;
  if (args.eps_prime && has_zero_lower_bound(prep.app, prep.reg) &&
      prep.initial_nonsmooth <= *args.eps_prime) {
    // F(x0) - min F <= F(x0) <= eps': x0 is already eps'-optimal.
    log << "initial objective " << prep.initial_nonsmooth << " <= eps' = " << *args.eps_prime
        << "; nothing to do\n";
    const EsoSetup setup = eso_setup(prep.loss, cfg.tau, cfg.beta_formula, cfg.beta_override);
    report.eso = setup.params;
    report.omega = setup.omega;
    report.active_columns = setup.primal.active.size();
    report.config = cfg;
    report.objective_trace.push_back({0, prep.initial_value});
    report.final_value = prep.initial_value;
    report.target_reached = true;
  } else {
    report = run(prep.loss, prep.reg, cfg);
  }

  log << "epochs=" << report.epochs_run << " updates=" << report.coordinate_updates
      << " F_mu=" << report.final_value << " beta'=" << report.eso.beta_prime << " ("
      << to_string(report.eso.formula) << ") time=" << report.wall_time << "s\n";

  if (args.out) {
    std::ofstream out(*args.out);
    if (!out) throw std::runtime_error("cannot write " + *args.out);
    out << report_to_json(report, config).dump(2) << '\n';
  }
  if (args.trace_csv) {
    std::ofstream out(*args.trace_csv);
    if (!out) throw std::runtime_error("cannot write " + *args.trace_csv);
    write_trace_csv(report, out);
  }
  if (report.target_reached || !prep.target) return kExitOk;
  return kExitBudget;
}

int cmd_eso_table(const EsoTableArgs& args, std::ostream& out, std::ostream& log) {
  if (args.omega < 1 || args.omega > args.n || args.m < 1) {
    throw std::invalid_argument("eso-table needs 1 <= omega <= n and m >= 1");
  }
  std::vector<std::size_t> taus = args.taus;
  if (taus.empty()) {
    const std::size_t tau_max = args.tau_max == 0 ? args.n : args.tau_max;
    if (args.tau_min < 1 || args.tau_min > tau_max || tau_max > args.n || args.tau_step < 1) {
      throw std::invalid_argument("tau range must satisfy 1 <= tau-min <= tau-max <= n");
    }
    for (std::size_t t = args.tau_min; t <= tau_max; t += args.tau_step) taus.push_back(t);
  }
  for (std::size_t t : taus) {
    if (t < 1 || t > args.n) throw std::invalid_argument("tau values must lie in [1, n]");
  }
  if (args.out) {
    std::ofstream file(*args.out);
    if (!file) throw std::runtime_error("cannot write " + *args.out);
    write_eso_table(taus, args.n, args.m, args.omega, file);
    log << "wrote " << taus.size() << " rows to " << *args.out << '\n';
  } else {
    write_eso_table(taus, args.n, args.m, args.omega, out);
  }
  return kExitOk;
}

int cmd_gradcheck(const GradcheckArgs& args, std::ostream& log) {
  const Application app = application_from_string(args.app);
  constexpr std::size_t kRows = 10;
  constexpr std::size_t kCols = 6;
  constexpr std::size_t kOmega = 3;

  double worst = 0.0;
  std::string worst_where;
  for (std::size_t inst = 0; inst < args.instances; ++inst) {
    SplitMix64 rng(mix_seed(args.seed, inst));
    const ProblemData base = synth_problem(kRows, kCols, kOmega, mix_seed(args.seed, inst + 7919));
    std::vector<double> x(kCols);
    for (double& xi : x) xi = rng.uniform(-1.0, 1.0);

    // Odd instances put the point next to an interpolating solution, where the
    // residuals sit near the kinks of the nonsmooth loss.
    std::vector<double> b(kRows);
    if (app != Application::adaboost && inst % 2 == 1) {
      for (std::size_t j = 0; j < kRows; ++j) {
        const auto row = base.row(j);
        double ax = 0.0;
        for (std::size_t k = 0; k < row.size(); ++k) ax += row.value[k] * x[row.index[k]];
        b[j] = ax + 1e-7 * rng.uniform(-1.0, 1.0);
      }
    } else if (app == Application::adaboost) {
      b.assign(base.labels().begin(), base.labels().end());
    } else {
      for (double& bj : b) bj = rng.uniform(-1.0, 1.0);
    }
    const ProblemData pd = ProblemData::from_triplets(kRows, kCols, base.triplets(), b);
    const SmoothedLoss loss = build_loss(pd, app, args.mu, std::nullopt);

    const SmoothState state(loss, x);
    const auto grad = state.full_gradient();
    double scale = 1.0;
    for (double g : grad) scale = std::max(scale, std::abs(g));
    for (std::size_t i = 0; i < kCols; ++i) {
      std::vector<double> xp = x, xm = x;
      xp[i] += args.step;
      xm[i] -= args.step;
      const double fd = (loss.smoothed_value(xp) - loss.smoothed_value(xm)) / (2.0 * args.step);
      const double err = std::abs(fd - grad[i]) / scale;
      if (!(err <= worst)) {
        worst = err;
        std::ostringstream where;
        where << "instance " << inst << ", coordinate " << i << ": analytic " << grad[i]
              << ", finite difference " << fd;
        worst_where = where.str();
      }
    }
  }

  log << "gradcheck app=" << args.app << " mu=" << (app == Application::adaboost ? 1.0 : args.mu)
      << " instances=" << args.instances << " max rel. error=" << worst << '\n';
  if (worst <= args.tolerance) return kExitOk;
  log << "FAILED (tolerance " << args.tolerance << "); worst: " << worst_where << '\n';
  if (args.mu < 1e3 * args.step) {
    log << "note: mu is below the finite-difference step scale; the smoothed loss is "
           "effectively nonsmooth at this resolution\n";
  }
  return kExitCheckFailed;
}

int cmd_bench(const BenchArgs& args, std::ostream& out, std::ostream& log) {
  if (args.taus.empty()) throw std::invalid_argument("bench needs at least one tau");
  const ProblemData pd = load_dataset(args.dataset, args.n_cols);
  const PreparedRun prep = prepare(pd, args.app, args.mu, args.eps_prime, args.reg, args.target,
                                   args.target_rel);
  if (!prep.target) throw std::invalid_argument("bench needs --target or --target-rel");

  const auto precision = out.precision(std::numeric_limits<double>::max_digits10);
  out << "tau,epochs,updates,wall_time,final_value\n";
  bool all_reached = true;
  for (std::size_t tau : args.taus) {
    SolverConfig cfg;
    cfg.tau = tau;
    cfg.seed = args.seed;
    if (args.beta_formula) cfg.beta_formula = parse_beta_formula(*args.beta_formula);
    cfg.max_epochs = args.max_epochs;
    cfg.target_value = prep.target;
    cfg.trace_every = std::max<std::size_t>(1, (args.trace_updates + tau - 1) / tau);
    cfg.workers = resolve_workers(args.workers);
    const RunReport report = run(prep.loss, prep.reg, cfg);
    all_reached = all_reached && report.target_reached;
    out << tau << ',' << report.epochs_run << ',' << report.coordinate_updates << ','
        << report.wall_time << ',' << report.final_value << '\n';
    log << "tau=" << tau << " epochs=" << report.epochs_run
        << " updates=" << report.coordinate_updates << " beta'=" << report.eso.beta_prime
        << (report.target_reached ? "" : " (target not reached)") << '\n';
  }
  out.precision(precision);
  return all_reached ? kExitOk : kExitBudget;
}

}  // namespace spcdm::cli
