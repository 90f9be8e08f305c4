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
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <string>
#include <string_view>

#include "spcdm/problem_data.hpp"

namespace spcdm {

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

template <typename T>
bool parse_number(std::string_view token, T& out) {
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  if (token.empty()) return false;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
  return ec == std::errc() && ptr == token.data() + token.size();
}

std::string_view next_token(std::string_view& rest) {
  const auto begin = rest.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) {
    rest = {};
    return {};
  }
  rest.remove_prefix(begin);
  const auto end = rest.find_first_of(" \t\r");
  const std::string_view token = rest.substr(0, end);
  rest.remove_prefix(end == std::string_view::npos ? rest.size() : end);
  return token;
}

}  // namespace

ProblemData parse_svmlight(std::istream& in, std::optional<std::size_t> n_cols) {
  std::vector<Triplet> entries;
  std::vector<double> labels;
  std::size_t max_index = 0;
  std::string line;
  std::size_t line_no = 0;

  while (std::getline(in, line)) {
    ++line_no;
    std::string_view rest(line);
    if (const auto hash = rest.find('#'); hash != std::string_view::npos) {
      rest = rest.substr(0, hash);
    }
    std::string_view token = next_token(rest);
    if (token.empty()) continue;

    double label = 0.0;
    if (!parse_number(token, label)) {
      throw ParseError(line_no, "malformed label '" + std::string(token) + "'");
    }
    const std::size_t row = labels.size();
    labels.push_back(label);

    std::size_t previous = 0;
    while (!(token = next_token(rest)).empty()) {
      const auto colon = token.find(':');
      if (colon == std::string_view::npos) {
        throw ParseError(line_no, "malformed token '" + std::string(token) + "'");
      }
      std::size_t index = 0;
      double value = 0.0;
      if (!parse_number(token.substr(0, colon), index) ||
          !parse_number(token.substr(colon + 1), value)) {
        throw ParseError(line_no, "malformed token '" + std::string(token) + "'");
      }
      if (index == 0) throw ParseError(line_no, "indices are 1-based, got 0");
      if (index <= previous) {
        throw ParseError(line_no, "indices not strictly ascending at '" + std::string(token) + "'");
      }
      if (!std::isfinite(value)) throw ParseError(line_no, "non-finite value");
      previous = index;
      max_index = std::max(max_index, index);
      if (value != 0.0) entries.push_back({row, index - 1, value});
    }
  }

  if (labels.empty()) throw ParseError(line_no, "no rows");
  std::size_t n = max_index;
  if (n_cols) {
    if (*n_cols < max_index) {
      throw std::invalid_argument("--n-cols " + std::to_string(*n_cols) +
                                  " is smaller than the largest index " +
                                  std::to_string(max_index));
    }
    n = *n_cols;
  }
  const std::size_t m = labels.size();
  return ProblemData::from_triplets(m, n, std::move(entries), std::move(labels));
}

ProblemData load_svmlight(const std::filesystem::path& path, std::optional<std::size_t> n_cols) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return parse_svmlight(in, n_cols);
}

void save_svmlight(const ProblemData& pd, std::ostream& out) {
  const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
  const auto labels = pd.labels();
  for (std::size_t j = 0; j < pd.rows(); ++j) {
    out << labels[j];
    const auto r = pd.row(j);
    for (std::size_t k = 0; k < r.size(); ++k) out << ' ' << r.index[k] + 1 << ':' << r.value[k];
    out << '\n';
  }
  out.precision(old_precision);
}

}  // namespace spcdm
