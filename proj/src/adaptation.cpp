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

#include "badapt/adaptation.hpp"

#include <string>

namespace badapt {

const char* to_string(UpdateLaw law) {
  switch (law) {
    case UpdateLaw::Gradient: return "Gradient";
    case UpdateLaw::ConcurrentLearning: return "ConcurrentLearning";
    case UpdateLaw::BarrierConstrained: return "BarrierConstrained";
    case UpdateLaw::BarrierSigmaMod: return "BarrierSigmaMod";
  }
  return "?";
}

std::optional<UpdateLaw> parse_update_law(std::string_view name) {
  for (auto law : {UpdateLaw::Gradient, UpdateLaw::ConcurrentLearning, UpdateLaw::BarrierConstrained,
                   UpdateLaw::BarrierSigmaMod}) {
    if (name == to_string(law)) return law;
  }
  return std::nullopt;
}

void UpdateLawConfig::validate(Eigen::Index dim_param) const {
  detail::require_size(P.size(), dim_param, "learning rate P");
  detail::require_size(k_cl.size(), dim_param, "CL gain k_cl");
  detail::require((P.array() > 0.0).all(), "learning rate P must be positive definite");
  detail::require((k_cl.array() > 0.0).all(), "CL gain k_cl must be positive definite");
  detail::require(sigma2 >= 0.0, "sigma2 must be non-negative");
}

Vec projection(const Vec& a, const Vec& b) {
  detail::require_size(b.size(), a.size(), "projection: b");
  Vec out(a.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (b[i] < 0.0) throw ContractViolation("projection: negative b entry " + std::to_string(i));
    out[i] = b[i] > 0.0 ? a[i] : std::max(0.0, a[i]);
  }
  return out;
}

namespace {

void check_groups(std::span<const ConstraintGroup> groups, std::span<const MultiplierState> multipliers) {
  if (groups.size() != multipliers.size()) {
    throw ContractViolation("constraint groups and multiplier states must pair up");
  }
}

// sum_j grad c_j^T lambda_j
Vec constraint_force(std::span<const ConstraintGroup> groups, std::span<const MultiplierState> multipliers,
                     const Vec& theta_hat) {
  Vec acc = Vec::Zero(theta_hat.size());
  for (std::size_t j = 0; j < groups.size(); ++j) {
    acc += weighted_gradient_sum(groups[j], theta_hat, multipliers[j].lambda);
  }
  return acc;
}

}  // namespace

Vec theta_hat_dot(const UpdateLawConfig& cfg, const Vec& e, const Mat& Y, const HistoryStack& stack,
                  std::span<const ConstraintGroup> groups, std::span<const MultiplierState> multipliers,
                  const Vec& theta_hat) {
  const Eigen::Index p = theta_hat.size();
  detail::require_size(e.size(), Y.rows(), "theta_hat_dot: tracking error");
  detail::require_size(Y.cols(), p, "theta_hat_dot: regressor columns");
  detail::require_size(cfg.P.size(), p, "theta_hat_dot: P");

  const auto P = cfg.P.asDiagonal();
  Vec rate = P * (Y.transpose() * e);

  switch (cfg.law) {
    case UpdateLaw::Gradient:
      return rate;
    case UpdateLaw::ConcurrentLearning:
    case UpdateLaw::BarrierConstrained:
      if (!stack.empty()) rate += P * (cfg.k_cl.asDiagonal() * stack.cl_term(theta_hat));
      break;
    case UpdateLaw::BarrierSigmaMod:
      rate -= cfg.sigma2 * theta_hat;
      break;
  }
  if (cfg.law == UpdateLaw::ConcurrentLearning) return rate;

  check_groups(groups, multipliers);
  if (!groups.empty()) rate -= P * constraint_force(groups, multipliers, theta_hat);
  return rate;
}

Vec lambda_dot(const MultiplierState& ms, const Vec& c_values) {
  detail::require_size(c_values.size(), ms.lambda.size(), "lambda_dot: constraint values");
  detail::require_size(ms.gamma_inv.size(), ms.lambda.size(), "lambda_dot: Gamma^{-1}");
  const Vec flow = -ms.alpha * ms.lambda + ms.gamma_inv.cwiseProduct(c_values);
  return projection(flow, ms.lambda);
}

double lagrangian_value(const UpdateLawConfig& cfg, const Vec& e, const Mat& Y, const HistoryStack& stack,
                        std::span<const ConstraintGroup> groups, std::span<const MultiplierState> multipliers,
                        const Vec& theta_hat, const Vec& theta_true) {
  check_groups(groups, multipliers);
  const Vec theta_tilde = theta_true - theta_hat;
  double value = e.dot(Y * theta_tilde);
  value += 0.5 * theta_tilde.dot(cfg.k_cl.asDiagonal() * (stack.gram() * theta_tilde));
  for (std::size_t j = 0; j < groups.size(); ++j) {
    value += multipliers[j].lambda.dot(barrier_values(groups[j], theta_hat));
  }
  return value;
}

Vec lagrangian_gradient(const UpdateLawConfig& cfg, const Vec& e, const Mat& Y, const HistoryStack& stack,
                        std::span<const ConstraintGroup> groups, std::span<const MultiplierState> multipliers,
                        const Vec& theta_hat, const Vec& theta_true) {
  check_groups(groups, multipliers);
  const Vec theta_tilde = theta_true - theta_hat;
  // the quadratic form only sees the symmetric part of k_cl G
  const Mat kg = cfg.k_cl.asDiagonal() * stack.gram();
  Vec grad = -(Y.transpose() * e) - 0.5 * (kg + kg.transpose()) * theta_tilde;
  grad += constraint_force(groups, multipliers, theta_hat);
  return grad;
}

}  // namespace badapt
