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

#ifndef SPCDM_SMOOTHING_HPP_
#define SPCDM_SMOOTHING_HPP_

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "spcdm/eso.hpp"
#include "spcdm/problem_data.hpp"

namespace spcdm {

enum class LossKind { linf_log_sum_exp, l1_huber, adaboost_log };

struct LossConstants {
  double sigma = 1.0;  // strong convexity of the prox function
  double D = 0.0;      // max of the prox function over the dual set
};

/// A smoothed max-type loss f_mu(x) = max_{z in Q} <Ax - b, z> - mu d(z).
///
///  * linf_log_sum_exp: Q is the simplex over the rows of the stacked system
///    [A; -A], d the entropy; f_mu = mu log((1/M) sum_j exp(r_j / mu)).
///  * l1_huber: Q = [-1,1]^m, d(z) = 1/2 sum_j v_j^2 z_j^2, which gives a
///    per-row Huber function with threshold a_j = mu v_j^2.
///  * adaboost_log: log((1/m) sum_j exp(b_j (Ax)_j)); the log-sum-exp engine
///    with mu = 1 on rows pre-scaled by b_j and zero offsets.
///
/// The effective matrix and offsets are the ones the loss actually evaluates:
/// already stacked for linf, already label-scaled for adaboost.
class SmoothedLoss {
 public:
  /// `stacked` must already be the 2m-row system (see stack_linf).
  static SmoothedLoss linf(std::shared_ptr<const ProblemData> stacked, double mu);
  /// `dw` must be the p = 2 weights of `pd` (dual_weights(pd, Application::l1)).
  static SmoothedLoss l1_huber(std::shared_ptr<const ProblemData> pd, double mu,
                               const DualWeights& dw);
  static SmoothedLoss adaboost(const ProblemData& pd);

  LossKind kind() const { return kind_; }
  Application application() const;
  double mu() const { return mu_; }
  const ProblemData& data() const { return *data_; }
  std::shared_ptr<const ProblemData> data_ptr() const { return data_; }
  const DualWeights& dual() const { return dual_; }
  bool is_log_sum_exp() const { return kind_ != LossKind::l1_huber; }

  /// Per-row Huber threshold mu v_j^2 (l1_huber only).
  double huber_threshold(std::size_t j) const { return thresholds_[j]; }

  /// Ax - b on the effective system.
  std::vector<double> residuals(std::span<const double> x) const;
  /// f_mu from residuals, evaluated with a max shift.
  double smoothed_from_residuals(std::span<const double> r) const;
  /// The dual maximizer z for the given residuals.
  std::vector<double> dual_point(std::span<const double> r) const;

  double smoothed_value(std::span<const double> x) const;
  std::vector<double> smoothed_gradient(std::span<const double> x) const;
  /// The nonsmooth function being approximated: max_j r_j for the
  /// log-sum-exp losses, sum_j |r_j| for l1.
  double nonsmooth_value(std::span<const double> x) const;

 private:
  SmoothedLoss() = default;

  LossKind kind_ = LossKind::l1_huber;
  double mu_ = 1.0;
  std::shared_ptr<const ProblemData> data_;
  DualWeights dual_;
  std::vector<double> thresholds_;
};

LossConstants loss_constants(const SmoothedLoss& loss);

// Relaxed atomic counter that can be copied along with its owner.
class ReadCounter {
 public:
  ReadCounter() = default;
  ReadCounter(const ReadCounter& other) : value_(other.get()) {}
  ReadCounter& operator=(const ReadCounter& other) {
    value_.store(other.get(), std::memory_order_relaxed);
    return *this;
  }
  void add(std::uint64_t k) const { value_.fetch_add(k, std::memory_order_relaxed); }
  std::uint64_t get() const { return value_.load(std::memory_order_relaxed); }
  void reset() { value_.store(0, std::memory_order_relaxed); }

 private:
  mutable std::atomic<std::uint64_t> value_{0};
};

/// Iterate plus incrementally maintained residuals r = Ax - b.
///
/// For the log-sum-exp losses the value is tracked as
///   f_mu(x + h) = fmu + mu log(S),  S = (1/M) sum_j exp((r_j - fmu) / mu),
/// where fmu is the value at the last recompute (so S = 1 right after it) and
/// each exp term is cached per row. For l1 the Huber sum itself is updated.
///
/// Single writer: apply_update/recompute must not run concurrently with
/// anything else. partial_gradient and value are safe to call concurrently.
class SmoothState {
 public:
  explicit SmoothState(SmoothedLoss loss);
  SmoothState(SmoothedLoss loss, std::vector<double> x0);

  const SmoothedLoss& loss() const { return loss_; }
  std::span<const double> x() const { return x_; }
  std::span<const double> residuals() const { return r_; }
  double fmu() const { return fmu_; }
  double lse_acc() const { return lse_acc_; }
  std::size_t staleness() const { return staleness_; }

  double value() const;
  std::vector<double> full_gradient() const;
  /// <column i, z>; reads exactly nnz(column i) entries of the state.
  double partial_gradient(std::size_t i) const;
  void apply_update(std::size_t i, double h);
  void recompute();

  /// True once `period` updates have accumulated, or when the log-sum-exp
  /// accumulator has drifted outside [1e-6, 1e6] (or stopped being finite).
  bool needs_recompute(std::size_t period) const;

  /// Matrix entries read by partial_gradient since construction.
  std::uint64_t entries_read() const { return entries_read_.get(); }

 private:
  SmoothedLoss loss_;
  std::vector<double> x_;
  std::vector<double> r_;
  std::vector<double> expo_;  // exp((r_j - fmu) / mu), log-sum-exp losses only
  double fmu_ = 0.0;
  double lse_acc_ = 1.0;
  double inv_rows_ = 1.0;
  std::size_t staleness_ = 0;
  ReadCounter entries_read_;
};

}  // namespace spcdm

#endif  // SPCDM_SMOOTHING_HPP_
