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

namespace badapt {

enum class ConstraintKind { ComponentBounds, NormBounds };
enum class BarrierType { Inverse, Log };

/**
 * One family of strict inequality constraints on the parameter estimate,
 * encoded through a barrier.
 *
 * ComponentBounds holds p lower and p upper bounds and yields 2p constraints
 * ordered [lower_1..lower_p, upper_1..upper_p]. NormBounds holds scalar bounds
 * on the Euclidean norm and yields two constraints [lower, upper].
 */
class ConstraintGroup {
 public:
  static ConstraintGroup component(BarrierType barrier, Vec lower, Vec upper);
  static ConstraintGroup norm(BarrierType barrier, double lower, double upper);

  ConstraintKind kind() const noexcept { return kind_; }
  BarrierType barrier() const noexcept { return barrier_; }
  const Vec& lower() const noexcept { return lower_; }
  const Vec& upper() const noexcept { return upper_; }
  Eigen::Index n_constraints() const noexcept;

  bool operator==(const ConstraintGroup& other) const;

 private:
  ConstraintGroup(ConstraintKind kind, BarrierType barrier, Vec lower, Vec upper)
      : kind_(kind), barrier_(barrier), lower_(std::move(lower)), upper_(std::move(upper)) {}

  ConstraintKind kind_;
  BarrierType barrier_;
  Vec lower_;
  Vec upper_;
};

struct Feasibility {
  bool feasible = false;
  /// Smallest slack over all constraints; negative when violated.
  double margin = 0.0;
};

/// Slacks -g_j for every constraint, same ordering as barrier_values.
Vec constraint_slacks(const ConstraintGroup& group, const Vec& theta_hat);

Feasibility is_feasible(const ConstraintGroup& group, const Vec& theta_hat);

/// Barrier values c_j; throws InfeasibleEvaluation unless strictly feasible.
Vec barrier_values(const ConstraintGroup& group, const Vec& theta_hat);

/// n_constraints x p Jacobian of barrier_values.
Mat barrier_gradients(const ConstraintGroup& group, const Vec& theta_hat);

/// Sum over constraints of lambda_j * grad c_j. Requires lambda >= 0.
Vec weighted_gradient_sum(const ConstraintGroup& group, const Vec& theta_hat, const Vec& lambda);

struct BarrierEval {
  Vec values;
  Mat gradients;
  Vec grad_weighted;
};

/// All three quantities in one pass.
BarrierEval evaluate_barrier(const ConstraintGroup& group, const Vec& theta_hat, const Vec& lambda);

const char* to_string(ConstraintKind kind);
const char* to_string(BarrierType barrier);

}  // namespace badapt
