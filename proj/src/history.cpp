/*
 Copyright 2026 The badapt Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#include "badapt/history.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <string>

namespace badapt {

Vec estimate_state_derivative(std::span<const TimedSample> window) {
  if (window.size() < 3) {
    throw InsufficientWindow("state derivative needs at least 3 samples, got " + std::to_string(window.size()));
  }
  const double h = window[1].t - window[0].t;
  detail::require(h > 0.0, "estimate_state_derivative: samples must be increasing in time");
  for (std::size_t i = 1; i < window.size(); ++i) {
    const double hi = window[i].t - window[i - 1].t;
    if (std::abs(hi - h) > 1e-9 * std::max(1.0, std::abs(h))) {
      throw ContractViolation("estimate_state_derivative: samples are not equally spaced");
    }
  }
  const std::size_t mid = window.size() / 2;
  const auto& lo = window[mid - 1];
  const auto& hi = window[mid + 1];
  detail::require_size(hi.x.size(), lo.x.size(), "estimate_state_derivative: sample");
  return (hi.x - lo.x) / (hi.t - lo.t);
}

double min_eigenvalue_psd(const Mat& sym) {
  if (sym.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Mat> es(sym, Eigen::EigenvaluesOnly);
  const Vec& ev = es.eigenvalues();
  const double top = std::max(ev.maxCoeff(), 0.0);
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * top * static_cast<double>(sym.rows());
  const double lo = ev.minCoeff();
  return lo <= floor ? 0.0 : lo;
}

HistoryStack::HistoryStack(int dim_state, int dim_param, std::size_t capacity, double min_eig_threshold)
    : n_(dim_state),
      p_(dim_param),
      capacity_(capacity),
      min_eig_threshold_(min_eig_threshold),
      gram_(Mat::Zero(dim_param, dim_param)) {
  detail::require(dim_state > 0 && dim_param > 0, "HistoryStack: dimensions must be positive");
  detail::require(capacity > 0, "HistoryStack: capacity must be positive");
  detail::require(min_eig_threshold > 0.0, "HistoryStack: excitation threshold must be positive");
  entries_.reserve(capacity);
}

void HistoryStack::check_entry(const StackEntry& e) const {
  if (e.Y.rows() != n_ || e.Y.cols() != p_) throw ContractViolation("history entry: regressor shape mismatch");
  detail::require_size(e.u.size(), n_, "history entry: input");
  detail::require_size(e.xdot_hat.size(), n_, "history entry: state rate");
}

void HistoryStack::recompute_gram() {
  gram_.setZero();
  for (const auto& e : entries_) gram_.noalias() += e.Y.transpose() * e.Y;
}

bool HistoryStack::try_insert(StackEntry candidate) {
  check_entry(candidate);
  if (!full()) {
    gram_.noalias() += candidate.Y.transpose() * candidate.Y;
    entries_.push_back(std::move(candidate));
    return true;
  }

  const double current = excitation_level();
  const Mat cand_gram = candidate.Y.transpose() * candidate.Y;
  double best = -std::numeric_limits<double>::infinity();
  std::size_t best_slot = 0;
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    const Mat swapped = gram_ - entries_[k].Y.transpose() * entries_[k].Y + cand_gram;
    const double level = min_eigenvalue_psd(swapped);
    if (level > best) {
      best = level;
      best_slot = k;
    }
  }
  const double scale = std::max(std::abs(current), gram_.cwiseAbs().maxCoeff());
  if (!(best > current + 1e-12 * scale)) return false;
  entries_[best_slot] = std::move(candidate);
  recompute_gram();
  return true;
}

double HistoryStack::excitation_level() const {
  if (entries_.empty()) return 0.0;
  return min_eigenvalue_psd(gram_);
}

bool HistoryStack::satisfies_excitation() const { return excitation_level() >= min_eig_threshold_; }

Vec HistoryStack::cl_term(const Vec& theta_hat) const {
  detail::require_size(theta_hat.size(), p_, "cl_term: theta_hat");
  Vec acc = Vec::Zero(p_);
  for (const auto& e : entries_) acc.noalias() += e.Y.transpose() * (e.xdot_hat - e.u - e.Y * theta_hat);
  return acc;
}

void HistoryStack::write_csv(std::ostream& os) const {
  os << "k";
  for (int r = 0; r < n_; ++r)
    for (int c = 0; c < p_; ++c) os << ",Y_" << r << '_' << c;
  for (int r = 0; r < n_; ++r) os << ",u_" << r;
  for (int r = 0; r < n_; ++r) os << ",xdot_hat_" << r;
  os << '\n';
  const auto old = os.precision(17);
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    const auto& e = entries_[k];
    os << k;
    for (int r = 0; r < n_; ++r)
      for (int c = 0; c < p_; ++c) os << ',' << e.Y(r, c);
    for (int r = 0; r < n_; ++r) os << ',' << e.u[r];
    for (int r = 0; r < n_; ++r) os << ',' << e.xdot_hat[r];
    os << '\n';
  }
  os.precision(old);
}

}  // namespace badapt
