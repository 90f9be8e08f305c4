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

#include <limits>
#include <ostream>

#include "spcdm/cli.hpp"

namespace spcdm::cli {

nlohmann::json report_to_json(const RunReport& report, const nlohmann::json& config) {
  nlohmann::json trace = nlohmann::json::array();
  for (const auto& point : report.objective_trace) trace.push_back({point.epoch, point.value});
  return {
      {"schema", kReportSchema},
      {"status", report.target_reached ? "target_reached" : "max_epochs"},
      {"epochs_run", report.epochs_run},
      {"coordinate_updates", report.coordinate_updates},
      {"wall_time", report.wall_time},
      {"final_value", report.final_value},
      {"final_x", {{"norm", report.final_x_norm}, {"nnz", report.final_x_nnz}}},
      {"eso",
       {{"beta_prime", report.eso.beta_prime},
        {"formula", to_string(report.eso.formula)},
        {"sigma", report.eso.sigma},
        {"mu", report.eso.mu},
        {"beta", report.eso.beta},
        {"omega", report.omega},
        {"active_columns", report.active_columns}}},
      {"config", config},
      {"objective_trace", trace},
  };
}

void write_trace_csv(const RunReport& report, std::ostream& out) {
  const auto precision = out.precision(std::numeric_limits<double>::max_digits10);
  out << "epoch,updates,value\n";
  for (const auto& point : report.objective_trace) {
    out << point.epoch << ',' << point.epoch * report.config.tau << ',' << point.value << '\n';
  }
  out.precision(precision);
}

void write_eso_table(const std::vector<std::size_t>& taus, std::size_t n, std::size_t m,
                     std::size_t omega, std::ostream& out) {
  const auto precision = out.precision(std::numeric_limits<double>::max_digits10);
  out << "tau,beta1,beta2,beta3\n";
  for (std::size_t tau : taus) {
    out << tau << ',' << beta1(omega, tau) << ',' << beta2(omega, tau, n) << ','
        << beta3(omega, tau, n, m) << '\n';
  }
  out.precision(precision);
}

}  // namespace spcdm::cli
