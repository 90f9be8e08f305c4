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

#include "spcdm/problem_data.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "spcdm/random.hpp"

namespace spcdm {

ProblemData ProblemData::from_triplets(std::size_t m, std::size_t n, std::vector<Triplet> entries,
                                       std::vector<double> b) {
  if (b.size() != m) {
    throw std::invalid_argument("label vector has length " + std::to_string(b.size()) +
                                ", expected " + std::to_string(m));
  }
  if (m > std::numeric_limits<Index>::max() || n > std::numeric_limits<Index>::max()) {
    throw std::invalid_argument("matrix dimensions exceed the 32-bit index range");
  }
  for (double bj : b) {
    if (!std::isfinite(bj)) throw std::invalid_argument("non-finite label");
  }

  std::erase_if(entries, [](const Triplet& t) { return t.value == 0.0; });
  for (const auto& t : entries) {
    if (t.row >= m || t.col >= n) {
      throw std::invalid_argument("entry (" + std::to_string(t.row) + ", " +
                                  std::to_string(t.col) + ") out of range");
    }
    if (!std::isfinite(t.value)) throw std::invalid_argument("non-finite matrix entry");
  }

  std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& c) {
    return a.row != c.row ? a.row < c.row : a.col < c.col;
  });
  for (std::size_t k = 1; k < entries.size(); ++k) {
    if (entries[k].row == entries[k - 1].row && entries[k].col == entries[k - 1].col) {
      throw std::invalid_argument("duplicate entry (" + std::to_string(entries[k].row) + ", " +
                                  std::to_string(entries[k].col) + ")");
    }
  }

  ProblemData pd;
  pd.m_ = m;
  pd.n_ = n;
  pd.b_ = std::move(b);

  const std::size_t nnz = entries.size();
  pd.row_ptr_.assign(m + 1, 0);
  pd.row_idx_.resize(nnz);
  pd.row_val_.resize(nnz);
  pd.col_ptr_.assign(n + 1, 0);
  pd.col_idx_.resize(nnz);
  pd.col_val_.resize(nnz);

  for (const auto& t : entries) {
    ++pd.row_ptr_[t.row + 1];
    ++pd.col_ptr_[t.col + 1];
  }
  for (std::size_t j = 0; j < m; ++j) pd.row_ptr_[j + 1] += pd.row_ptr_[j];
  for (std::size_t i = 0; i < n; ++i) pd.col_ptr_[i + 1] += pd.col_ptr_[i];

  // entries are row-major sorted, so filling columns in this order keeps row
  // indices ascending inside every column.
  std::vector<std::size_t> col_fill(pd.col_ptr_.begin(), pd.col_ptr_.end() - 1);
  for (std::size_t k = 0; k < nnz; ++k) {
    const auto& t = entries[k];
    pd.row_idx_[k] = static_cast<Index>(t.col);
    pd.row_val_[k] = t.value;
    const std::size_t c = col_fill[t.col]++;
    pd.col_idx_[c] = static_cast<Index>(t.row);
    pd.col_val_[c] = t.value;
  }
  return pd;
}

SparseVectorView ProblemData::row(std::size_t j) const {
  const std::size_t begin = row_ptr_[j];
  const std::size_t len = row_ptr_[j + 1] - begin;
  return {std::span<const Index>(row_idx_).subspan(begin, len),
          std::span<const double>(row_val_).subspan(begin, len)};
}

SparseVectorView ProblemData::column(std::size_t i) const {
  const std::size_t begin = col_ptr_[i];
  const std::size_t len = col_ptr_[i + 1] - begin;
  return {std::span<const Index>(col_idx_).subspan(begin, len),
          std::span<const double>(col_val_).subspan(begin, len)};
}

std::vector<Triplet> ProblemData::triplets() const {
  std::vector<Triplet> out;
  out.reserve(nnz());
  for (std::size_t j = 0; j < m_; ++j) {
    const auto r = row(j);
    for (std::size_t k = 0; k < r.size(); ++k) out.push_back({j, r.index[k], r.value[k]});
  }
  return out;
}

std::vector<Triplet> ProblemData::column_triplets() const {
  std::vector<Triplet> out;
  out.reserve(nnz());
  for (std::size_t i = 0; i < n_; ++i) {
    const auto c = column(i);
    for (std::size_t k = 0; k < c.size(); ++k) out.push_back({c.index[k], i, c.value[k]});
  }
  return out;
}

RowSparsityProfile row_sparsity(const ProblemData& pd) {
  RowSparsityProfile profile;
  profile.per_row_nnz.assign(1, 0);
  for (std::size_t j = 0; j < pd.rows(); ++j) {
    const std::size_t k = pd.row(j).size();
    if (k >= profile.per_row_nnz.size()) profile.per_row_nnz.resize(k + 1, 0);
    ++profile.per_row_nnz[k];
    profile.omega = std::max(profile.omega, k);
  }
  return profile;
}

ProblemData synth_problem(std::size_t m, std::size_t n, std::size_t omega, std::uint64_t seed) {
  if (m == 0 || n == 0) throw std::invalid_argument("synth_problem: m and n must be positive");
  if (omega < 1 || omega > n) {
    throw std::invalid_argument("synth_problem: omega must lie in [1, n]");
  }
  SplitMix64 rng(mix_seed(seed, 0));
  std::vector<Triplet> entries;
  entries.reserve(m * omega);
  std::vector<double> b(m);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::uint64_t col : sample_without_replacement(n, omega, rng)) {
      const double magnitude = rng.uniform(0.1, 1.0);
      const double sign = (rng.next() >> 63) ? -1.0 : 1.0;
      entries.push_back({j, static_cast<std::size_t>(col), sign * magnitude});
    }
    b[j] = (rng.next() >> 63) ? -1.0 : 1.0;
  }
  return ProblemData::from_triplets(m, n, std::move(entries), std::move(b));
}

ProblemData stack_linf(const ProblemData& pd) {
  const std::size_t m = pd.rows();
  std::vector<Triplet> entries;
  entries.reserve(2 * pd.nnz());
  for (const auto& t : pd.triplets()) {
    entries.push_back(t);
    entries.push_back({t.row + m, t.col, -t.value});
  }
  std::vector<double> b(2 * m);
  const auto labels = pd.labels();
  for (std::size_t j = 0; j < m; ++j) {
    b[j] = labels[j];
    b[j + m] = -labels[j];
  }
  return ProblemData::from_triplets(2 * m, pd.cols(), std::move(entries), std::move(b));
}

}  // namespace spcdm
