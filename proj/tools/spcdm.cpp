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

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "spcdm/cli.hpp"

using namespace spcdm::cli;

int main(int argc, char** argv) {
  CLI::App app{"Smoothed parallel coordinate descent for nonsmooth sparse losses"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Minimize a smoothed loss on a dataset");
  solve_cmd->add_option("dataset", solve.dataset, "SVMLight file or synth:M:N:OMEGA:SEED")
      ->required();
  solve_cmd->add_option("--n-cols", solve.n_cols, "Column count when the file understates it");
  solve_cmd->add_option("--app", solve.app, "linf, l1 or adaboost");
  solve_cmd->add_option("--tau", solve.tau, "Coordinates updated per iteration");
  auto* eps_opt = solve_cmd->add_option("--eps", solve.eps_prime, "Target accuracy eps'; sets mu = eps'/2D");
  solve_cmd->add_option("--mu", solve.mu, "Smoothing parameter")->excludes(eps_opt);
  solve_cmd->add_option("--reg", solve.reg, "none, l1:LAMBDA, box:LO:HI or ridge:DELTA");
  solve_cmd->add_option("--seed", solve.seed);
  solve_cmd->add_option("--max-epochs", solve.max_epochs);
  auto* target_opt = solve_cmd->add_option("--target", solve.target, "Stop when F_mu <= value");
  solve_cmd->add_option("--target-rel", solve.target_rel, "Stop when F_mu <= ratio * F_mu(x0)")
      ->excludes(target_opt);
  solve_cmd->add_option("--beta-formula", solve.beta_formula, "beta1, beta2 or beta3");
  solve_cmd->add_option("--beta", solve.beta_override, "Override beta'");
  solve_cmd->add_option("--trace-every", solve.trace_every, "Iterations between objective evaluations");
  solve_cmd->add_option("--workers", solve.workers, "Threads (SPCDM_THREADS overrides)");
  solve_cmd->add_option("--out", solve.out, "JSON report path");
  solve_cmd->add_option("--trace", solve.trace_csv, "CSV trace path");

  EsoTableArgs table;
  auto* table_cmd = app.add_subcommand("eso-table", "Tabulate beta' formulas against tau");
  table_cmd->add_option("--n", table.n, "Number of coordinates")->required();
  table_cmd->add_option("--m", table.m, "Number of rows")->required();
  table_cmd->add_option("--omega", table.omega, "Maximum nonzeros per row")->required();
  table_cmd->add_option("--tau-min", table.tau_min);
  table_cmd->add_option("--tau-max", table.tau_max, "Defaults to n");
  table_cmd->add_option("--tau-step", table.tau_step);
  table_cmd->add_option("--taus", table.taus, "Explicit tau values")->delimiter(',');
  table_cmd->add_option("--out", table.out, "CSV path (stdout by default)");

  GradcheckArgs grad;
  auto* grad_cmd = app.add_subcommand("gradcheck", "Finite-difference check of the gradients");
  grad_cmd->add_option("--app", grad.app, "linf, l1 or adaboost");
  grad_cmd->add_option("--seed", grad.seed);
  grad_cmd->add_option("--mu", grad.mu);
  grad_cmd->add_option("--instances", grad.instances);

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Updates and time to reach a target, per tau");
  bench_cmd->add_option("dataset", bench.dataset, "SVMLight file or synth:M:N:OMEGA:SEED")
      ->required();
  bench_cmd->add_option("--n-cols", bench.n_cols);
  bench_cmd->add_option("--app", bench.app, "linf, l1 or adaboost");
  bench_cmd->add_option("--taus", bench.taus, "Comma-separated tau values")->delimiter(',');
  auto* bench_eps = bench_cmd->add_option("--eps", bench.eps_prime);
  bench_cmd->add_option("--mu", bench.mu)->excludes(bench_eps);
  bench_cmd->add_option("--reg", bench.reg);
  bench_cmd->add_option("--seed", bench.seed);
  bench_cmd->add_option("--max-epochs", bench.max_epochs);
  auto* bench_target = bench_cmd->add_option("--target", bench.target);
  bench_cmd->add_option("--target-rel", bench.target_rel)->excludes(bench_target);
  bench_cmd->add_option("--beta-formula", bench.beta_formula);
  bench_cmd->add_option("--trace-updates", bench.trace_updates,
                        "Coordinate updates between target checks");
  bench_cmd->add_option("--workers", bench.workers);
  bench_cmd->add_option("--out", bench.out, "CSV path (stdout by default)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  return run_guarded(
      [&] {
        if (*solve_cmd) return cmd_solve(solve, std::cerr);
        if (*table_cmd) return cmd_eso_table(table, std::cout, std::cerr);
        if (*grad_cmd) return cmd_gradcheck(grad, std::cerr);
        if (bench.out) {
          std::ofstream file(*bench.out);
          if (!file) throw std::runtime_error("cannot write " + *bench.out);
          return cmd_bench(bench, file, std::cerr);
        }
        return cmd_bench(bench, std::cout, std::cerr);
      },
      std::cerr);
}
