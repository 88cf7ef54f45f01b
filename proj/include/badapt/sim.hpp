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
#include "badapt/history.hpp"
#include "badapt/model.hpp"
#include "badapt/scenario.hpp"
#include "badapt/trajectory_log.hpp"

#include <vector>

namespace badapt {

/// Closed-loop state: plant state, parameter estimate, one multiplier vector
/// per constraint group (empty when the law carries none).
struct CompositeState {
  double t = 0.0;
  Vec x;
  Vec theta_hat;
  std::vector<Vec> lambdas;
};

struct CompositeDerivative {
  Vec x_dot;
  Vec theta_hat_dot;
  std::vector<Vec> lambda_dot;
};

/// u = xdot_d - Y theta_hat - k (x - x_d).
Vec control_input(const Vec& x, const Vec& x_d, const Vec& xdot_d, const Vec& theta_hat, const Mat& Y,
                  const Vec& k);

/**
 * Plant, controller and update law assembled into one ODE.
 *
 * Owns the history stack for a single run; the stack and the active law are
 * frozen for the duration of an integration step.
 */
class ClosedLoop {
 public:
  static constexpr int kMaxHalvings = 20;

  explicit ClosedLoop(ScenarioConfig cfg);
  ClosedLoop(ScenarioConfig cfg, PlantModel plant, DesiredTrajectory traj);

  CompositeDerivative rhs(const CompositeState& s) const;

  /// RK4 step with feasibility-triggered bisection. The multipliers are
  /// clamped at zero after every accepted sub-step. Throws BarrierBreach once
  /// the halving budget is exhausted and NumericalDivergence on NaN/Inf.
  CompositeState rk4_step(const CompositeState& s, double dt) const;

  CompositeState initial_state() const;

  /// Whether multipliers are integrated: barrier law and at least one group.
  bool carries_multipliers() const noexcept { return carries_multipliers_; }

  UpdateLaw active_law() const noexcept { return active_law_; }
  void set_active_law(UpdateLaw law) noexcept { active_law_ = law; }

  const ScenarioConfig& config() const noexcept { return cfg_; }
  const PlantModel& plant() const noexcept { return plant_; }
  const DesiredTrajectory& trajectory() const noexcept { return traj_; }
  HistoryStack& stack() noexcept { return stack_; }
  const HistoryStack& stack() const noexcept { return stack_; }
  const std::vector<ConstraintGroup>& groups() const noexcept { return groups_; }

  std::vector<MultiplierState> multiplier_states(const std::vector<Vec>& lambdas) const;

  /// Fills the stack with exact-model samples along the desired trajectory.
  void prefill_offline_stack();

 private:
  CompositeState single_step(const CompositeState& s, double dt) const;
  CompositeState bisect(const CompositeState& s, double dt, int& budget) const;
  Vec pack(const CompositeState& s) const;
  CompositeState unpack(double t, const Vec& y) const;
  void check_feasible(const CompositeState& s) const;

  ScenarioConfig cfg_;
  PlantModel plant_;
  DesiredTrajectory traj_;
  HistoryStack stack_;
  std::vector<ConstraintGroup> groups_;
  bool carries_multipliers_ = false;
  UpdateLaw active_law_;
};

/// Integrates from t = 0 to t_final, logging every `log_every` steps.
/// Deterministic given the configuration.
TrajectoryLog run_scenario(const ScenarioConfig& cfg);

/// The law used for the next step: BarrierConstrained falls back to the
/// sigma-modified law while an online stack is not yet exciting.
UpdateLaw select_active_law(const ScenarioConfig& cfg, const HistoryStack& stack);

}  // namespace badapt
