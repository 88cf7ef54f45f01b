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

#include "badapt/barrier.hpp"
#include "badapt/history.hpp"
#include "badapt/types.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace badapt {

enum class UpdateLaw { Gradient, ConcurrentLearning, BarrierConstrained, BarrierSigmaMod };

const char* to_string(UpdateLaw law);
std::optional<UpdateLaw> parse_update_law(std::string_view name);

/// Laws that carry Lagrange multipliers.
constexpr bool uses_multipliers(UpdateLaw law) {
  return law == UpdateLaw::BarrierConstrained || law == UpdateLaw::BarrierSigmaMod;
}

/// Multiplier vector of one constraint group with its flow gains.
struct MultiplierState {
  Vec lambda;
  Vec gamma_inv;  ///< diagonal of Gamma_j^{-1}, one entry per constraint
  double alpha = 0.0;
};

struct UpdateLawConfig {
  UpdateLaw law = UpdateLaw::BarrierConstrained;
  Vec P;     ///< learning-rate diagonal (p)
  Vec k_cl;  ///< concurrent-learning gain diagonal (p)
  double sigma2 = 0.0;

  /// Throws ContractViolation unless P, k_cl > 0 and sigma2 >= 0.
  void validate(Eigen::Index dim_param) const;
};

/// Elementwise [a]^+_b: a where b > 0, max(0, a) where b == 0.
Vec projection(const Vec& a, const Vec& b);

/**
 * Parameter estimate rate for the configured law.
 *
 *   Gradient:            P Y^T e
 *   ConcurrentLearning:  P Y^T e + P k_cl sum_k Y_k^T (xdot_hat_k - u_k - Y_k theta_hat)
 *   BarrierConstrained:  ConcurrentLearning - sum_j P diag(lambda_j) grad c_j
 *   BarrierSigmaMod:     P Y^T e - sigma2 theta_hat - sum_j P diag(lambda_j) grad c_j
 *
 * `groups` and `multipliers` are parallel; they are ignored by the
 * Gradient and ConcurrentLearning laws.
 */
Vec theta_hat_dot(const UpdateLawConfig& cfg, const Vec& e, const Mat& Y, const HistoryStack& stack,
                  std::span<const ConstraintGroup> groups, std::span<const MultiplierState> multipliers,
                  const Vec& theta_hat);

/// Projected multiplier flow [-alpha lambda + Gamma^{-1} c]^+_lambda.
Vec lambda_dot(const MultiplierState& ms, const Vec& c_values);

/**
 * L(theta_hat, lambda) = e^T Y theta_tilde + 1/2 theta_tilde^T k_cl G theta_tilde
 *                        + sum_j lambda_j^T c_j,
 * with G the stack Gram matrix and theta_tilde = theta_true - theta_hat.
 */
double lagrangian_value(const UpdateLawConfig& cfg, const Vec& e, const Mat& Y, const HistoryStack& stack,
                        std::span<const ConstraintGroup> groups, std::span<const MultiplierState> multipliers,
                        const Vec& theta_hat, const Vec& theta_true);

/// Analytic gradient of lagrangian_value with respect to theta_hat.
Vec lagrangian_gradient(const UpdateLawConfig& cfg, const Vec& e, const Mat& Y, const HistoryStack& stack,
                        std::span<const ConstraintGroup> groups, std::span<const MultiplierState> multipliers,
                        const Vec& theta_hat, const Vec& theta_true);

}  // namespace badapt
