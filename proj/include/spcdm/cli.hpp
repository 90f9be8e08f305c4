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

#ifndef SPCDM_CLI_HPP_
#define SPCDM_CLI_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "spcdm/solver.hpp"

namespace spcdm::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitBudget = 2;
inline constexpr int kExitCheckFailed = 3;

inline constexpr int kReportSchema = 1;

/// Problem source: a path to an SVMLight file, or `synth:M:N:OMEGA:SEED`.
ProblemData load_dataset(const std::string& source, std::optional<std::size_t> n_cols);

/// `none`, `l1:LAMBDA`, `box:LO:HI` or `ridge:DELTA`.
Regularizer parse_regularizer(const std::string& spec);

/// `beta1`, `beta2` or `beta3`.
BetaFormula parse_beta_formula(const std::string& name);

struct SolveArgs {
  std::string dataset;
  std::optional<std::size_t> n_cols;
  std::string app = "l1";
  std::size_t tau = 1;
  std::optional<double> eps_prime;
  std::optional<double> mu;
  std::string reg = "none";
  std::uint64_t seed = 0;
  std::size_t max_epochs = 100000;
  std::optional<double> target;
  std::optional<double> target_rel;
  std::optional<std::string> beta_formula;
  std::optional<double> beta_override;
  std::size_t trace_every = 100;
  std::size_t workers = 1;
  std::optional<std::string> out;
  std::optional<std::string> trace_csv;
};

struct EsoTableArgs {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t omega = 0;
  std::size_t tau_min = 1;
  std::size_t tau_max = 0;
  std::size_t tau_step = 1;
  std::vector<std::size_t> taus;  // overrides the range when nonempty
  std::optional<std::string> out;
};

struct GradcheckArgs {
  std::string app = "l1";
  std::uint64_t seed = 0;
  double mu = 0.1;
  std::size_t instances = 50;
  double step = 1e-6;
  double tolerance = 1e-5;
};

struct BenchArgs {
  std::string dataset;
  std::optional<std::size_t> n_cols;
  std::string app = "l1";
  std::vector<std::size_t> taus{1, 2, 4, 8};
  std::optional<double> eps_prime;
  std::optional<double> mu;
  std::string reg = "none";
  std::uint64_t seed = 0;
  std::size_t max_epochs = 1000000;
  std::optional<double> target;
  std::optional<double> target_rel;
  std::optional<std::string> beta_formula;
  std::size_t trace_updates = 100;
  std::size_t workers = 1;
  std::optional<std::string> out;
};

/// Smoothed loss for an application, with mu either given directly or derived
/// from eps' as eps'/(2D). Adaboost always uses mu = 1.
SmoothedLoss build_loss(const ProblemData& pd, Application app, std::optional<double> mu,
                        std::optional<double> eps_prime);

/// Worker count after applying the SPCDM_THREADS environment override.
std::size_t resolve_workers(std::size_t requested);

/// Runs a command body, reporting any exception on `log` and mapping it to
/// kExitUsage.
int run_guarded(const std::function<int()>& body, std::ostream& log);

int cmd_solve(const SolveArgs& args, std::ostream& log);
int cmd_eso_table(const EsoTableArgs& args, std::ostream& out, std::ostream& log);
int cmd_gradcheck(const GradcheckArgs& args, std::ostream& log);
int cmd_bench(const BenchArgs& args, std::ostream& out, std::ostream& log);

nlohmann::json report_to_json(const RunReport& report, const nlohmann::json& config);
void write_trace_csv(const RunReport& report, std::ostream& out);
void write_eso_table(const std::vector<std::size_t>& taus, std::size_t n, std::size_t m,
                     std::size_t omega, std::ostream& out);

}  // namespace spcdm::cli

#endif  // SPCDM_CLI_HPP_
