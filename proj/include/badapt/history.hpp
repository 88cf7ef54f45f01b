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

#pragma once

#include "badapt/types.hpp"

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace badapt {

/// One recorded data point: regressor, applied input, estimated state rate.
struct StackEntry {
  Mat Y;
  Vec u;
  Vec xdot_hat;
};

struct TimedSample {
  double t = 0.0;
  Vec x;
};

/// Central difference (x(t+h) - x(t-h)) / 2h about the window midpoint.
/// The window must hold at least three equally spaced samples.
Vec estimate_state_derivative(std::span<const TimedSample> window);

/**
 * Concurrent-learning history stack.
 *
 * Holds at most `capacity` entries and caches the Gram matrix
 * sum_k Y_k^T Y_k. Once full, a candidate replaces the slot whose swap
 * maximizes the minimum eigenvalue of the Gram matrix, and only when that
 * strictly improves it.
 */
class HistoryStack {
 public:
  static constexpr std::size_t kDefaultCapacity = 20;
  static constexpr double kDefaultMinEigThreshold = 1e-3;

  HistoryStack(int dim_state, int dim_param, std::size_t capacity = kDefaultCapacity,
               double min_eig_threshold = kDefaultMinEigThreshold);

  bool try_insert(StackEntry candidate);

  /// Minimum eigenvalue of the Gram matrix; 0 for an empty stack.
  double excitation_level() const;

  /// excitation_level() >= min_eig_threshold().
  bool satisfies_excitation() const;

  /// sum_k Y_k^T (xdot_hat_k - u_k - Y_k theta_hat).
  Vec cl_term(const Vec& theta_hat) const;

  const Mat& gram() const noexcept { return gram_; }
  const std::vector<StackEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  std::size_t capacity() const noexcept { return capacity_; }
  bool empty() const noexcept { return entries_.empty(); }
  bool full() const noexcept { return entries_.size() == capacity_; }
  double min_eig_threshold() const noexcept { return min_eig_threshold_; }
  int dim_state() const noexcept { return n_; }
  int dim_param() const noexcept { return p_; }

  /// CSV rows: k, Y_k row-major, u_k, xdot_hat_k (with header).
  void write_csv(std::ostream& os) const;

 private:
  void check_entry(const StackEntry& e) const;
  void recompute_gram();

  int n_;
  int p_;
  std::size_t capacity_;
  double min_eig_threshold_;
  std::vector<StackEntry> entries_;
  Mat gram_;
};

/// Minimum eigenvalue of a symmetric PSD matrix, with round-off below the
/// numerical rank snapped to zero.
double min_eigenvalue_psd(const Mat& sym);

}  // namespace badapt
