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

#include "spcdm/smoothing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace spcdm {

namespace {

double huber(double r, double a) {
  const double t = std::abs(r);
  return t <= a ? r * r / (2.0 * a) : t - 0.5 * a;
}

double huber_slope(double r, double a) { return std::clamp(r / a, -1.0, 1.0); }

}  // namespace

SmoothedLoss SmoothedLoss::linf(std::shared_ptr<const ProblemData> stacked, double mu) {
  if (!stacked) throw std::invalid_argument("null problem data");
  if (!(mu > 0.0) || !std::isfinite(mu)) throw std::invalid_argument("mu must be positive");
  if (stacked->rows() == 0) throw std::invalid_argument("linf loss needs at least one row");
  SmoothedLoss loss;
  loss.kind_ = LossKind::linf_log_sum_exp;
  loss.mu_ = mu;
  loss.dual_ = dual_weights(*stacked, Application::linf);
  loss.data_ = std::move(stacked);
  return loss;
}

SmoothedLoss SmoothedLoss::l1_huber(std::shared_ptr<const ProblemData> pd, double mu,
                                    const DualWeights& dw) {
  if (!pd) throw std::invalid_argument("null problem data");
  if (!(mu > 0.0) || !std::isfinite(mu)) throw std::invalid_argument("mu must be positive");
  if (dw.p != 2 || dw.v.size() != pd->rows()) {
    throw std::invalid_argument("l1 loss needs p = 2 dual weights of matching length");
  }
  SmoothedLoss loss;
  loss.kind_ = LossKind::l1_huber;
  loss.mu_ = mu;
  loss.dual_ = dw;
  loss.thresholds_.resize(dw.v.size());
  for (std::size_t j = 0; j < dw.v.size(); ++j) {
    if (!(dw.v[j] > 0.0)) throw std::invalid_argument("l1 dual weights must be positive");
    loss.thresholds_[j] = mu * dw.v[j] * dw.v[j];
  }
  loss.data_ = std::move(pd);
  return loss;
}

SmoothedLoss SmoothedLoss::adaboost(const ProblemData& pd) {
  if (pd.rows() == 0) throw std::invalid_argument("adaboost loss needs at least one row");
  const auto labels = pd.labels();
  std::vector<Triplet> scaled = pd.triplets();
  for (auto& t : scaled) t.value *= labels[t.row];
  auto data = std::make_shared<ProblemData>(ProblemData::from_triplets(
      pd.rows(), pd.cols(), std::move(scaled), std::vector<double>(pd.rows(), 0.0)));
  SmoothedLoss loss;
  loss.kind_ = LossKind::adaboost_log;
  loss.mu_ = 1.0;
  loss.dual_ = dual_weights(*data, Application::adaboost);
  loss.data_ = std::move(data);
  return loss;
}

Application SmoothedLoss::application() const {
  switch (kind_) {
    case LossKind::linf_log_sum_exp: return Application::linf;
    case LossKind::l1_huber: return Application::l1;
    case LossKind::adaboost_log: return Application::adaboost;
  }
  return Application::l1;
}

std::vector<double> SmoothedLoss::residuals(std::span<const double> x) const {
  const ProblemData& pd = *data_;
  if (x.size() != pd.cols()) throw std::invalid_argument("iterate length mismatch");
  std::vector<double> r(pd.labels().begin(), pd.labels().end());
  for (double& rj : r) rj = -rj;
  for (std::size_t i = 0; i < pd.cols(); ++i) {
    if (x[i] == 0.0) continue;
    const auto col = pd.column(i);
    for (std::size_t k = 0; k < col.size(); ++k) r[col.index[k]] += col.value[k] * x[i];
  }
  return r;
}

double SmoothedLoss::smoothed_from_residuals(std::span<const double> r) const {
  if (kind_ == LossKind::l1_huber) {
    double total = 0.0;
    for (std::size_t j = 0; j < r.size(); ++j) total += huber(r[j], thresholds_[j]);
    return total;
  }
  const double r_max = *std::max_element(r.begin(), r.end());
  double acc = 0.0;
  for (double rj : r) acc += std::exp((rj - r_max) / mu_);
  return r_max + mu_ * std::log(acc / static_cast<double>(r.size()));
}

std::vector<double> SmoothedLoss::dual_point(std::span<const double> r) const {
  std::vector<double> z(r.size());
  if (kind_ == LossKind::l1_huber) {
    for (std::size_t j = 0; j < r.size(); ++j) z[j] = huber_slope(r[j], thresholds_[j]);
    return z;
  }
  const double r_max = *std::max_element(r.begin(), r.end());
  double acc = 0.0;
  for (std::size_t j = 0; j < r.size(); ++j) {
    z[j] = std::exp((r[j] - r_max) / mu_);
    acc += z[j];
  }
  for (double& zj : z) zj /= acc;
  return z;
}

double SmoothedLoss::smoothed_value(std::span<const double> x) const {
  return smoothed_from_residuals(residuals(x));
}

std::vector<double> SmoothedLoss::smoothed_gradient(std::span<const double> x) const {
  const auto z = dual_point(residuals(x));
  const ProblemData& pd = *data_;
  std::vector<double> g(pd.cols(), 0.0);
  for (std::size_t i = 0; i < pd.cols(); ++i) {
    const auto col = pd.column(i);
    double acc = 0.0;
    for (std::size_t k = 0; k < col.size(); ++k) acc += col.value[k] * z[col.index[k]];
    g[i] = acc;
  }
  return g;
}

double SmoothedLoss::nonsmooth_value(std::span<const double> x) const {
  const auto r = residuals(x);
  if (kind_ == LossKind::l1_huber) {
    double total = 0.0;
    for (double rj : r) total += std::abs(rj);
    return total;
  }
  return *std::max_element(r.begin(), r.end());
}

LossConstants loss_constants(const SmoothedLoss& loss) {
  if (loss.kind() != LossKind::l1_huber) {
    return {1.0, std::log(static_cast<double>(loss.data().rows()))};
  }
  double half_sum = 0.0;
  for (double v : loss.dual().v) half_sum += v * v;
  return {1.0, 0.5 * half_sum};
}

SmoothState::SmoothState(SmoothedLoss loss)
    : SmoothState(std::move(loss), std::vector<double>()) {}

SmoothState::SmoothState(SmoothedLoss loss, std::vector<double> x0)
    : loss_(std::move(loss)), x_(std::move(x0)) {
  if (x_.empty()) x_.assign(loss_.data().cols(), 0.0);
  if (x_.size() != loss_.data().cols()) throw std::invalid_argument("iterate length mismatch");
  inv_rows_ = 1.0 / static_cast<double>(loss_.data().rows());
  recompute();
}

double SmoothState::value() const {
  if (!loss_.is_log_sum_exp()) return fmu_;
  return fmu_ + loss_.mu() * std::log(lse_acc_);
}

std::vector<double> SmoothState::full_gradient() const {
  std::vector<double> g(x_.size());
  for (std::size_t i = 0; i < x_.size(); ++i) g[i] = partial_gradient(i);
  return g;
}

double SmoothState::partial_gradient(std::size_t i) const {
  const auto col = loss_.data().column(i);
  entries_read_.add(col.size());
  double acc = 0.0;
  if (loss_.is_log_sum_exp()) {
    for (std::size_t k = 0; k < col.size(); ++k) acc += col.value[k] * expo_[col.index[k]];
    return acc * inv_rows_ / lse_acc_;
  }
  for (std::size_t k = 0; k < col.size(); ++k) {
    const Index j = col.index[k];
    acc += col.value[k] * huber_slope(r_[j], loss_.huber_threshold(j));
  }
  return acc;
}

void SmoothState::apply_update(std::size_t i, double h) {
  x_[i] += h;
  const auto col = loss_.data().column(i);
  if (loss_.is_log_sum_exp()) {
    const double inv_mu = 1.0 / loss_.mu();
    for (std::size_t k = 0; k < col.size(); ++k) {
      const Index j = col.index[k];
      r_[j] += col.value[k] * h;
      const double fresh = std::exp((r_[j] - fmu_) * inv_mu);
      lse_acc_ += (fresh - expo_[j]) * inv_rows_;
      expo_[j] = fresh;
    }
  } else {
    for (std::size_t k = 0; k < col.size(); ++k) {
      const Index j = col.index[k];
      const double a = loss_.huber_threshold(j);
      const double before = huber(r_[j], a);
      r_[j] += col.value[k] * h;
      fmu_ += huber(r_[j], a) - before;
    }
  }
  ++staleness_;
}

void SmoothState::recompute() {
  r_ = loss_.residuals(x_);
  fmu_ = loss_.smoothed_from_residuals(r_);
  lse_acc_ = 1.0;
  staleness_ = 0;
  if (loss_.is_log_sum_exp()) {
    const double inv_mu = 1.0 / loss_.mu();
    expo_.resize(r_.size());
    for (std::size_t j = 0; j < r_.size(); ++j) expo_[j] = std::exp((r_[j] - fmu_) * inv_mu);
  }
}

bool SmoothState::needs_recompute(std::size_t period) const {
  if (staleness_ >= period) return true;
  if (!loss_.is_log_sum_exp()) return false;
  return !std::isfinite(lse_acc_) || lse_acc_ < 1e-6 || lse_acc_ > 1e6;
}

}  // namespace spcdm
