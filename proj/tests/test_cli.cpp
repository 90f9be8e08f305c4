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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "spcdm/cli.hpp"

using namespace spcdm;
using namespace spcdm::cli;

namespace {

std::filesystem::path tmp_path(const std::string& name) {
  std::filesystem::path dir(SPCDM_TEST_TMPDIR);
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream fields(line);
    std::string cell;
    while (std::getline(fields, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("solve writes a report and reaches a feasible target") {
    SolveArgs args;
    args.dataset = "synth:2000:5000:5:1";
    args.app = "l1";
    args.tau = 4;
    args.mu = 0.1;
    args.target_rel = 0.5;
    args.out = tmp_path("solve.json").string();
    args.trace_csv = tmp_path("solve.csv").string();
    std::ostringstream log;
    REQUIRE(cmd_solve(args, log) == kExitOk);

    const auto text = slurp(*args.out);
    const auto report = nlohmann::json::parse(text);
    CHECK(report["schema"] == 1);
    CHECK(report["status"] == "target_reached");
    CHECK(report["eso"]["formula"] == "beta2");
    CHECK(report["config"]["tau"] == 4);
    CHECK(report["coordinate_updates"].get<std::size_t>() ==
          4 * report["epochs_run"].get<std::size_t>());
    // Parsing and serializing again reproduces the file byte for byte.
    CHECK(report.dump(2) + "\n" == text);

    const auto trace = parse_csv(slurp(*args.trace_csv));
    REQUIRE(trace.size() >= 2);
    CHECK(trace[0] == std::vector<std::string>{"epoch", "updates", "value"});
    CHECK(trace[1][0] == "0");
  }

  TEST_CASE("solve with eps' above the initial gap does nothing") {
    SolveArgs args;
    args.dataset = "synth:50:40:3:2";
    args.app = "linf";
    args.eps_prime = 10.0;  // F(0) = max |b_j| = 1
    args.out = tmp_path("solved.json").string();
    std::ostringstream log;
    CHECK(cmd_solve(args, log) == kExitOk);
    const auto report = nlohmann::json::parse(slurp(*args.out));
    CHECK(report["epochs_run"] == 0);
    CHECK(report["coordinate_updates"] == 0);
    CHECK(report["eso"]["mu"].get<double>() == doctest::Approx(10.0 / (2.0 * std::log(100.0))));
  }

  TEST_CASE("solve exit codes") {
    SolveArgs args;
    args.dataset = "synth:50:40:3:2";
    args.tau = 2;
    args.max_epochs = 3;
    args.target = -1.0;  // below the minimum of a nonnegative loss
    std::ostringstream log;
    CHECK(cmd_solve(args, log) == kExitBudget);
    args.target.reset();
    CHECK(cmd_solve(args, log) == kExitOk);
  }

  TEST_CASE("an all-zero row makes l1 fail with a usage error") {
    const auto path = tmp_path("zero_row.svm");
    std::ofstream(path) << "1 1:1 2:3\n-1\n1 2:0.5\n";
    SolveArgs args;
    args.dataset = path.string();
    args.app = "l1";
    std::ostringstream log;
    CHECK(run_guarded([&] { return cmd_solve(args, log); }, log) == kExitUsage);
    CHECK(log.str().find("no nonzeros") != std::string::npos);

    args.app = "linf";
    args.max_epochs = 2;
    CHECK(run_guarded([&] { return cmd_solve(args, log); }, log) == kExitOk);
  }

  TEST_CASE("bad inputs map to usage errors") {
    std::ostringstream log;
    SolveArgs args;
    args.dataset = tmp_path("missing.svm").string();
    CHECK(run_guarded([&] { return cmd_solve(args, log); }, log) == kExitUsage);
    args.dataset = "synth:1:2";
    CHECK(run_guarded([&] { return cmd_solve(args, log); }, log) == kExitUsage);
    args.dataset = "synth:10:10:2:0";
    args.app = "hinge";
    CHECK(run_guarded([&] { return cmd_solve(args, log); }, log) == kExitUsage);
    args.app = "l1";
    args.tau = 11;
    CHECK(run_guarded([&] { return cmd_solve(args, log); }, log) == kExitUsage);
  }

  TEST_CASE("parse_regularizer") {
    CHECK(parse_regularizer("none").kind == Regularizer::Kind::none);
    CHECK(parse_regularizer("l1:0.5").lambda == 0.5);
    const auto box = parse_regularizer("box:-1:2.5");
    CHECK(box.lo == -1.0);
    CHECK(box.hi == 2.5);
    CHECK(parse_regularizer("ridge:3").delta == 3.0);
    CHECK_THROWS_AS(parse_regularizer("l1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_regularizer("box:1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_regularizer("l1:abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_regularizer("elastic:1"), std::invalid_argument);
    CHECK(parse_beta_formula("beta3") == BetaFormula::beta3);
    CHECK_THROWS_AS(parse_beta_formula("beta4"), std::invalid_argument);
  }

  TEST_CASE("eso-table on a 3.2M-column dataset shape") {
    EsoTableArgs args;
    args.n = 3231961;
    args.m = 2396130;
    args.omega = 414;
    for (std::size_t t = 1; t <= 32; ++t) args.taus.push_back(t);
    for (std::size_t t : {100u, 413u, 414u, 415u, 600u}) args.taus.push_back(t);
    std::ostringstream out, log;
    REQUIRE(cmd_eso_table(args, out, log) == kExitOk);
    const auto rows = parse_csv(out.str());
    REQUIRE(rows.size() == args.taus.size() + 1);
    CHECK(rows[0] == std::vector<std::string>{"tau", "beta1", "beta2", "beta3"});
    CHECK(rows[1] == std::vector<std::string>{"1", "1", "1", "1"});
    for (std::size_t k = 1; k < rows.size(); ++k) {
      const double b1 = std::stod(rows[k][1]), b2 = std::stod(rows[k][2]),
                   b3 = std::stod(rows[k][3]);
      CHECK(b2 <= b1);
      CHECK(b2 <= b3);
      if (std::stoul(rows[k][0]) >= 414) CHECK(b1 == 414.0);
    }
  }

  TEST_CASE("eso-table validation and file output") {
    EsoTableArgs args;
    args.n = 10;
    args.m = 3;
    args.omega = 11;
    std::ostringstream out, log;
    CHECK_THROWS_AS(cmd_eso_table(args, out, log), std::invalid_argument);
    args.omega = 4;
    args.tau_max = 11;
    CHECK_THROWS_AS(cmd_eso_table(args, out, log), std::invalid_argument);
    args.tau_max = 0;
    args.out = tmp_path("table.csv").string();
    CHECK(cmd_eso_table(args, out, log) == kExitOk);
    CHECK(parse_csv(slurp(*args.out)).size() == 11);
  }

  TEST_CASE("gradcheck") {
    std::ostringstream log;
    for (const char* app : {"linf", "l1", "adaboost"}) {
      GradcheckArgs args;
      args.app = app;
      CHECK(cmd_gradcheck(args, log) == kExitOk);
    }
    GradcheckArgs degenerate;
    degenerate.app = "l1";
    degenerate.mu = 1e-12;
    CHECK(cmd_gradcheck(degenerate, log) == kExitCheckFailed);
    CHECK(log.str().find("worst") != std::string::npos);
  }

  TEST_CASE("bench rows and determinism") {
    BenchArgs args;
    args.dataset = "synth:200:300:3:4";
    args.taus = {1, 4};
    args.mu = 0.5;
    args.target_rel = 0.6;
    std::ostringstream first, second, log;
    REQUIRE(cmd_bench(args, first, log) == kExitOk);
    REQUIRE(cmd_bench(args, second, log) == kExitOk);
    const auto a = parse_csv(first.str()), b = parse_csv(second.str());
    REQUIRE(a.size() == 3);
    CHECK(a[0] == std::vector<std::string>{"tau", "epochs", "updates", "wall_time", "final_value"});
    for (std::size_t k = 1; k < a.size(); ++k) {
      // Everything but the wall time is reproducible.
      CHECK(a[k][0] == b[k][0]);
      CHECK(a[k][1] == b[k][1]);
      CHECK(a[k][2] == b[k][2]);
      CHECK(a[k][4] == b[k][4]);
    }

    args.taus = {2};
    std::ostringstream single;
    CHECK(cmd_bench(args, single, log) == kExitOk);
    CHECK(parse_csv(single.str()).size() == 2);

    args.target_rel.reset();
    args.target = -1.0;
    args.max_epochs = 7;
    args.taus = {1, 3};
    std::ostringstream unreachable;
    CHECK(cmd_bench(args, unreachable, log) == kExitBudget);
    const auto rows = parse_csv(unreachable.str());
    REQUIRE(rows.size() == 3);
    CHECK(rows[1][1] == "7");
    CHECK(rows[2][1] == "7");
  }

  TEST_CASE("SPCDM_THREADS overrides the worker count") {
    ::setenv("SPCDM_THREADS", "3", 1);
    CHECK(resolve_workers(8) == 3);
    ::unsetenv("SPCDM_THREADS");
    CHECK(resolve_workers(8) == 8);
    CHECK(resolve_workers(0) == 1);
  }
}
