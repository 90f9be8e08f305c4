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

#ifndef SPCDM_PROBLEM_DATA_HPP_
#define SPCDM_PROBLEM_DATA_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace spcdm {

using Index = std::uint32_t;

/// Read-only view of one row or one column of the sparse matrix.
struct SparseVectorView {
  std::span<const Index> index;
  std::span<const double> value;

  std::size_t size() const { return index.size(); }
  bool empty() const { return index.empty(); }
};

struct Triplet {
  std::size_t row;
  std::size_t col;
  double value;

  friend bool operator==(const Triplet&, const Triplet&) = default;
};

/// Sparse data matrix A (m x n) with labels b, stored in both compressed row
/// and compressed column layouts. Immutable after construction.
///
/// Invariants: every stored value is finite and nonzero, indices are strictly
/// increasing inside each row and column, and both layouts describe the same
/// matrix.
class ProblemData {
 public:
  ProblemData() = default;

  /// Builds both layouts from unordered triplets. Zero entries are dropped;
  /// duplicate (row, col) pairs, out-of-range indices and non-finite values
  /// throw std::invalid_argument.
  static ProblemData from_triplets(std::size_t m, std::size_t n, std::vector<Triplet> entries,
                                   std::vector<double> b);

  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }
  std::size_t nnz() const { return row_val_.size(); }

  SparseVectorView row(std::size_t j) const;
  SparseVectorView column(std::size_t i) const;
  std::span<const double> labels() const { return b_; }

  /// Row-major triplets.
  std::vector<Triplet> triplets() const;
  /// Column-major triplets, rebuilt from the column layout.
  std::vector<Triplet> column_triplets() const;

 private:
  std::size_t m_ = 0;
  std::size_t n_ = 0;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<Index> row_idx_;
  std::vector<double> row_val_;
  std::vector<std::size_t> col_ptr_{0};
  std::vector<Index> col_idx_;
  std::vector<double> col_val_;
  std::vector<double> b_;
};

struct RowSparsityProfile {
  std::size_t omega = 0;
  /// per_row_nnz[k] = number of rows with exactly k nonzeros.
  std::vector<std::size_t> per_row_nnz;
};

RowSparsityProfile row_sparsity(const ProblemData& pd);

/// Error raised while reading SVMLight text; carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Parses `label idx:val idx:val ...` lines with 1-based ascending indices.
/// The column count is the largest index seen unless `n_cols` overrides it.
ProblemData parse_svmlight(std::istream& in, std::optional<std::size_t> n_cols = std::nullopt);
ProblemData load_svmlight(const std::filesystem::path& path,
                          std::optional<std::size_t> n_cols = std::nullopt);
void save_svmlight(const ProblemData& pd, std::ostream& out);

/// Random problem where every row has exactly `omega` nonzeros at distinct
/// uniformly chosen columns. Values are uniform in [-1,-0.1] U [0.1,1] and
/// labels uniform in {-1,+1}. Deterministic in `seed`.
ProblemData synth_problem(std::size_t m, std::size_t n, std::size_t omega, std::uint64_t seed);

/// The 2m-row system [A; -A] with labels [b; -b].
ProblemData stack_linf(const ProblemData& pd);

}  // namespace spcdm

#endif  // SPCDM_PROBLEM_DATA_HPP_
