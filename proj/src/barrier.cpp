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

#include "badapt/barrier.hpp"

#include <cmath>
#include <string>

namespace badapt {

ConstraintGroup ConstraintGroup::component(BarrierType barrier, Vec lower, Vec upper) {
  detail::require(lower.size() > 0, "ComponentBounds: empty bounds");
  detail::require_size(upper.size(), lower.size(), "ComponentBounds: upper bound");
  for (Eigen::Index i = 0; i < lower.size(); ++i) {
    if (!(lower[i] < upper[i])) {
      throw ContractViolation("ComponentBounds: lower[" + std::to_string(i) + "] must be below upper");
    }
  }
  return ConstraintGroup(ConstraintKind::ComponentBounds, barrier, std::move(lower), std::move(upper));
}

ConstraintGroup ConstraintGroup::norm(BarrierType barrier, double lower, double upper) {
  detail::require(lower > 0.0, "NormBounds: lower bound must be positive");
  detail::require(lower < upper, "NormBounds: lower bound must be below upper");
  return ConstraintGroup(ConstraintKind::NormBounds, barrier, Vec::Constant(1, lower), Vec::Constant(1, upper));
}

Eigen::Index ConstraintGroup::n_constraints() const noexcept {
  return kind_ == ConstraintKind::ComponentBounds ? 2 * lower_.size() : 2;
}

bool ConstraintGroup::operator==(const ConstraintGroup& other) const {
  return kind_ == other.kind_ && barrier_ == other.barrier_ && lower_ == other.lower_ &&
         upper_ == other.upper_;
}

namespace {

void check_dims(const ConstraintGroup& group, const Vec& theta_hat) {
  if (group.kind() == ConstraintKind::ComponentBounds) {
    detail::require_size(theta_hat.size(), group.lower().size(), "constraint group: theta_hat");
  } else {
    detail::require(theta_hat.size() > 0, "constraint group: empty theta_hat");
  }
}

void require_strict(const Vec& slack) {
  for (Eigen::Index j = 0; j < slack.size(); ++j) {
    if (!(slack[j] > 0.0)) {
      throw InfeasibleEvaluation("barrier evaluated with slack " + std::to_string(slack[j]) +
                                 " on constraint " + std::to_string(j));
    }
  }
}

// Barrier of a single slack s > 0 and its derivative d c / d s.
//   inverse: c = 1/s    (= -1/g with g = -s)
//   log:     c = -ln s
double barrier_of_slack(BarrierType b, double s) { return b == BarrierType::Inverse ? 1.0 / s : -std::log(s); }

double dbarrier_dslack(BarrierType b, double s) { return b == BarrierType::Inverse ? -1.0 / (s * s) : -1.0 / s; }

}  // namespace

Vec constraint_slacks(const ConstraintGroup& group, const Vec& theta_hat) {
  check_dims(group, theta_hat);
  if (group.kind() == ConstraintKind::ComponentBounds) {
    const Eigen::Index p = theta_hat.size();
    Vec s(2 * p);
    s.head(p) = theta_hat - group.lower();
    s.tail(p) = group.upper() - theta_hat;
    return s;
  }
  const double r = theta_hat.norm();
  return (Vec(2) << r - group.lower()[0], group.upper()[0] - r).finished();
}

Feasibility is_feasible(const ConstraintGroup& group, const Vec& theta_hat) {
  const Vec s = constraint_slacks(group, theta_hat);
  const double margin = s.minCoeff();
  return {margin > 0.0, margin};
}

Vec barrier_values(const ConstraintGroup& group, const Vec& theta_hat) {
  const Vec s = constraint_slacks(group, theta_hat);
  require_strict(s);
  Vec c(s.size());
  for (Eigen::Index j = 0; j < s.size(); ++j) c[j] = barrier_of_slack(group.barrier(), s[j]);
  return c;
}

Mat barrier_gradients(const ConstraintGroup& group, const Vec& theta_hat) {
  check_dims(group, theta_hat);
  const Eigen::Index p = theta_hat.size();
  if (group.kind() == ConstraintKind::NormBounds) {
    const double r = theta_hat.norm();
    if (r == 0.0) throw SingularGradient("norm barrier gradient undefined at theta_hat = 0");
  }
  const Vec s = constraint_slacks(group, theta_hat);
  require_strict(s);

  Mat grad = Mat::Zero(s.size(), p);
  if (group.kind() == ConstraintKind::ComponentBounds) {
    // lower slack grows with theta_hat_i, upper slack shrinks
    for (Eigen::Index i = 0; i < p; ++i) {
      grad(i, i) = dbarrier_dslack(group.barrier(), s[i]);
      grad(p + i, i) = -dbarrier_dslack(group.barrier(), s[p + i]);
    }
  } else {
    const Vec unit = theta_hat / theta_hat.norm();
    grad.row(0) = dbarrier_dslack(group.barrier(), s[0]) * unit.transpose();
    grad.row(1) = -dbarrier_dslack(group.barrier(), s[1]) * unit.transpose();
  }
  return grad;
}

Vec weighted_gradient_sum(const ConstraintGroup& group, const Vec& theta_hat, const Vec& lambda) {
  return evaluate_barrier(group, theta_hat, lambda).grad_weighted;
}

BarrierEval evaluate_barrier(const ConstraintGroup& group, const Vec& theta_hat, const Vec& lambda) {
  detail::require_size(lambda.size(), group.n_constraints(), "multiplier vector");
  for (Eigen::Index j = 0; j < lambda.size(); ++j) {
    if (lambda[j] < 0.0) throw ContractViolation("negative multiplier entry " + std::to_string(j));
  }
  BarrierEval out;
  out.values = barrier_values(group, theta_hat);
  out.gradients = barrier_gradients(group, theta_hat);
  out.grad_weighted = out.gradients.transpose() * lambda;
  return out;
}

const char* to_string(ConstraintKind kind) {
  return kind == ConstraintKind::ComponentBounds ? "component" : "norm";
}

const char* to_string(BarrierType barrier) { return barrier == BarrierType::Inverse ? "inverse" : "log"; }

}  // namespace badapt
