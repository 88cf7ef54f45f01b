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

#include "badapt/adaptation.hpp"
#include "badapt/scenario.hpp"
#include "badapt/trajectory_log.hpp"
#include "badapt/types.hpp"

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace badapt {

/// V = 1/2 e^T e + 1/2 theta_tilde^T P^{-1} theta_tilde + 1/2 lambda_tilde^T Gamma lambda_tilde.
/// `P` and `Gamma` are diagonals; `Gamma` spans all groups (block-diagonal).
double lyapunov_value(const Vec& e, const Vec& theta_tilde, const Vec& lambda_tilde, const Vec& P,
                      const Vec& Gamma);

/// Block-diagonal Gamma (inverse of each group's Gamma^{-1}) flattened.
Vec multiplier_metric(const ScenarioConfig& cfg);

/// Constants of the ultimate-bound envelope
///   ||z(t)||^2 <= (Lmax/Lmin) ||z(0)||^2 e^{-b1 t} + b2/(b1 Lmin) (1 - e^{-b1 t}).
struct UubConstants {
  double Lambda_min = 0.0;
  double Lambda_max = 0.0;
  double beta1 = 0.0;
  double beta2 = 0.0;
  double gamma_min = 0.0;
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double sigma_bar1 = 0.0;
  bool excitation_met = false;  ///< false: the k_cl term was dropped from beta1
  bool has_multipliers = false;
  Vec lambda_star;
};

/// `alpha1_fraction` splits alpha = alpha1 + alpha2 (even split by default).
UubConstants uub_constants(const ScenarioConfig& cfg, double sigma_bar1, const Vec& lambda_star,
                           double alpha1_fraction = 0.5);

struct EnvelopeReport {
  std::size_t steps = 0;
  std::size_t satisfied = 0;
  double fraction = 0.0;
  double worst_ratio = 0.0;  ///< max ||z||^2 / envelope
  std::vector<double> violation_times;

  bool all_satisfied() const noexcept { return satisfied == steps; }
};

/// Evaluates the envelope at every logged row, with z = [e, theta_tilde,
/// lambda - lambda_star]. Diagnostic only: lambda_star is an estimate.
EnvelopeReport envelope_check(const TrajectoryLog& log, const UubConstants& consts);

struct KktResiduals {
  double stationarity = 0.0;  ///< ||grad_theta_hat L||
  double comp_slack = 0.0;    ///< max_i |lambda_i (-alpha lambda_i + (Gamma^{-1} c)_i)|
};

KktResiduals kkt_residuals(const UpdateLawConfig& cfg, const Vec& e, const Mat& Y, const HistoryStack& stack,
                           std::span<const ConstraintGroup> groups, std::span<const MultiplierState> multipliers,
                           const Vec& theta_hat, const Vec& theta_true);

/// Flat `key = value` block.
void write_report_text(std::ostream& os, const UubConstants& consts, const EnvelopeReport& env,
                       const KktResiduals& kkt);

std::string report_csv_header();
std::string report_csv_row(const std::string& scenario, const UubConstants& consts, const EnvelopeReport& env,
                           const KktResiduals& kkt);

}  // namespace badapt
