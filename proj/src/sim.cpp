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

#include "badapt/sim.hpp"

#include "badapt/analysis.hpp"
#include "badapt/integrator.hpp"

#include <array>
#include <cmath>
#include <limits>

namespace badapt {

Vec control_input(const Vec& x, const Vec& x_d, const Vec& xdot_d, const Vec& theta_hat, const Mat& Y,
                  const Vec& k) {
  detail::require_size(x_d.size(), x.size(), "control_input: x_d");
  detail::require_size(xdot_d.size(), x.size(), "control_input: xdot_d");
  detail::require_size(k.size(), x.size(), "control_input: k");
  detail::require_size(Y.rows(), x.size(), "control_input: regressor rows");
  detail::require_size(Y.cols(), theta_hat.size(), "control_input: regressor columns");
  return xdot_d - Y * theta_hat - k.cwiseProduct(x - x_d);
}

UpdateLaw select_active_law(const ScenarioConfig& cfg, const HistoryStack& stack) {
  if (cfg.law.law == UpdateLaw::BarrierConstrained && cfg.stack.mode == StackMode::Online &&
      !stack.satisfies_excitation()) {
    return UpdateLaw::BarrierSigmaMod;
  }
  return cfg.law.law;
}

ClosedLoop::ClosedLoop(ScenarioConfig cfg)
    : ClosedLoop(cfg, plant_by_name(cfg.plant, cfg.theta_true), DesiredTrajectory{}) {}

ClosedLoop::ClosedLoop(ScenarioConfig cfg, PlantModel plant, DesiredTrajectory traj)
    : cfg_(std::move(cfg)),
      plant_(std::move(plant)),
      traj_(traj.eval ? std::move(traj) : trajectory_by_name(cfg_.trajectory, plant_.dim_state)),
      stack_(plant_.dim_state, plant_.dim_param, cfg_.stack.capacity, cfg_.stack.min_eig_threshold),
      active_law_(cfg_.law.law) {
  cfg_.law.validate(plant_.dim_param);
  detail::require_size(cfg_.k.size(), plant_.dim_state, "control gain k");
  groups_.reserve(cfg_.groups.size());
  for (const auto& g : cfg_.groups) groups_.push_back(g.group);
  carries_multipliers_ = uses_multipliers(cfg_.law.law) && !groups_.empty();
}

std::vector<MultiplierState> ClosedLoop::multiplier_states(const std::vector<Vec>& lambdas) const {
  std::vector<MultiplierState> out;
  out.reserve(lambdas.size());
  for (std::size_t j = 0; j < lambdas.size(); ++j) {
    out.push_back({lambdas[j], cfg_.groups[j].gamma_inv, cfg_.groups[j].alpha});
  }
  return out;
}

CompositeState ClosedLoop::initial_state() const {
  CompositeState s{0.0, cfg_.x0, cfg_.theta_hat0, {}};
  if (carries_multipliers_) {
    for (const auto& g : cfg_.groups) s.lambdas.push_back(g.lambda0);
  }
  return s;
}

void ClosedLoop::prefill_offline_stack() {
  const int count = cfg_.stack.offline_samples;
  for (int i = 1; i <= count; ++i) {
    const double t = cfg_.stack.offline_span * static_cast<double>(i) / static_cast<double>(count);
    const Vec x = desired_eval(traj_, t).x_d;
    StackEntry entry{eval_regressor(plant_, x), Vec::Zero(plant_.dim_state), Vec()};
    entry.xdot_hat = entry.Y * plant_.theta_true + entry.u;
    stack_.try_insert(std::move(entry));
  }
}

CompositeDerivative ClosedLoop::rhs(const CompositeState& s) const {
  bool finite = s.x.allFinite() && s.theta_hat.allFinite();
  for (const auto& l : s.lambdas) finite = finite && l.allFinite();
  if (!finite) throw NumericalDivergence("non-finite composite state", s.t);

  const DesiredSample d = desired_eval(traj_, s.t);
  const Mat Y = eval_regressor(plant_, s.x);
  const Vec e = s.x - d.x_d;
  const Vec u = control_input(s.x, d.x_d, d.xdot_d, s.theta_hat, Y, cfg_.k);

  CompositeDerivative out;
  out.x_dot = plant_derivative(plant_, s.x, u);

  UpdateLawConfig law = cfg_.law;
  law.law = active_law_;
  if (carries_multipliers_) {
    // intermediate RK stages may undershoot zero; the flow is evaluated at
    // the projected multiplier
    std::vector<Vec> clamped;
    clamped.reserve(s.lambdas.size());
    for (const auto& l : s.lambdas) clamped.push_back(l.cwiseMax(0.0));
    const auto ms = multiplier_states(clamped);
    out.theta_hat_dot = theta_hat_dot(law, e, Y, stack_, groups_, ms, s.theta_hat);
    out.lambda_dot.reserve(ms.size());
    for (std::size_t j = 0; j < ms.size(); ++j) {
      out.lambda_dot.push_back(lambda_dot(ms[j], barrier_values(groups_[j], s.theta_hat)));
    }
  } else {
    out.theta_hat_dot = theta_hat_dot(law, e, Y, stack_, {}, {}, s.theta_hat);
  }
  return out;
}

Vec ClosedLoop::pack(const CompositeState& s) const {
  Eigen::Index size = s.x.size() + s.theta_hat.size();
  for (const auto& l : s.lambdas) size += l.size();
  Vec y(size);
  Eigen::Index off = 0;
  y.segment(off, s.x.size()) = s.x;
  off += s.x.size();
  y.segment(off, s.theta_hat.size()) = s.theta_hat;
  off += s.theta_hat.size();
  for (const auto& l : s.lambdas) {
    y.segment(off, l.size()) = l;
    off += l.size();
  }
  return y;
}

CompositeState ClosedLoop::unpack(double t, const Vec& y) const {
  CompositeState s;
  s.t = t;
  Eigen::Index off = 0;
  s.x = y.segment(off, plant_.dim_state);
  off += plant_.dim_state;
  s.theta_hat = y.segment(off, plant_.dim_param);
  off += plant_.dim_param;
  if (carries_multipliers_) {
    for (const auto& g : groups_) {
      s.lambdas.push_back(y.segment(off, g.n_constraints()));
      off += g.n_constraints();
    }
  }
  return s;
}

void ClosedLoop::check_feasible(const CompositeState& s) const {
  if (!carries_multipliers_) return;
  for (const auto& g : groups_) {
    if (!is_feasible(g, s.theta_hat).feasible) throw InfeasibleEvaluation("step left the feasible set");
  }
}

CompositeState ClosedLoop::single_step(const CompositeState& s, double dt) const {
  auto f = [this](double t, const Vec& y) {
    const CompositeDerivative d = rhs(unpack(t, y));
    CompositeState packed{t, d.x_dot, d.theta_hat_dot, d.lambda_dot};
    return pack(packed);
  };
  CompositeState next = unpack(s.t + dt, rk4_advance(f, s.t, pack(s), dt));
  bool finite = next.x.allFinite() && next.theta_hat.allFinite();
  for (auto& l : next.lambdas) {
    finite = finite && l.allFinite();
    l = l.cwiseMax(0.0);
  }
  if (!finite) throw NumericalDivergence("non-finite state after step", s.t);
  check_feasible(next);
  return next;
}

CompositeState ClosedLoop::bisect(const CompositeState& s, double dt, int& budget) const {
  try {
    return single_step(s, dt);
  } catch (const InfeasibleEvaluation&) {
    if (budget == 0) throw BarrierBreach("no feasible step after " + std::to_string(kMaxHalvings) + " halvings", s.t);
    --budget;
  }
  const CompositeState mid = bisect(s, 0.5 * dt, budget);
  return bisect(mid, 0.5 * dt, budget);
}

CompositeState ClosedLoop::rk4_step(const CompositeState& s, double dt) const {
  int budget = kMaxHalvings;
  return bisect(s, dt, budget);
}

namespace {

LogRow make_row(const ClosedLoop& loop, const CompositeState& s) {
  const auto& cfg = loop.config();
  LogRow r;
  r.t = s.t;
  r.x = s.x;
  r.x_d = desired_eval(loop.trajectory(), s.t).x_d;
  r.e = s.x - r.x_d;
  r.theta_hat = s.theta_hat;
  r.theta_tilde = loop.plant().theta_true - s.theta_hat;
  r.lambdas = s.lambdas;
  r.margins.resize(static_cast<Eigen::Index>(cfg.groups.size()));
  r.min_margin = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < cfg.groups.size(); ++j) {
    const double m = is_feasible(cfg.groups[j].group, s.theta_hat).margin;
    r.margins[static_cast<Eigen::Index>(j)] = m;
    r.min_margin = std::min(r.min_margin, m);
  }
  r.excitation = loop.stack().excitation_level();
  r.law = loop.active_law();
  return r;
}

Vec flatten(const std::vector<Vec>& parts) {
  Eigen::Index size = 0;
  for (const auto& p : parts) size += p.size();
  Vec out(size);
  Eigen::Index off = 0;
  for (const auto& p : parts) {
    out.segment(off, p.size()) = p;
    off += p.size();
  }
  return out;
}

}  // namespace

TrajectoryLog run_scenario(const ScenarioConfig& cfg) {
  cfg.validate();
  ClosedLoop loop(cfg);
  if (cfg.stack.mode == StackMode::Offline) loop.prefill_offline_stack();

  TrajectoryLog log;
  log.scenario = cfg.name;
  log.dim_state = loop.plant().dim_state;
  log.dim_param = loop.plant().dim_param;
  for (const auto& g : cfg.groups) log.lambda_sizes.push_back(g.group.n_constraints());
  log.carries_multipliers = loop.carries_multipliers();

  const auto steps = static_cast<long long>(std::llround(cfg.t_final / cfg.dt));
  CompositeState s = loop.initial_state();
  loop.set_active_law(select_active_law(cfg, loop.stack()));
  log.rows.push_back(make_row(loop, s));

  Vec x_prev = s.x;
  for (long long step = 0; step < steps; ++step) {
    loop.set_active_law(select_active_law(cfg, loop.stack()));

    const bool record = cfg.stack.mode == StackMode::Online && step > 0 && step % cfg.stack.record_every == 0;
    StackEntry candidate;
    if (record) {
      const DesiredSample d = desired_eval(loop.trajectory(), s.t);
      candidate.Y = eval_regressor(loop.plant(), s.x);
      candidate.u = control_input(s.x, d.x_d, d.xdot_d, s.theta_hat, candidate.Y, cfg.k);
    }

    CompositeState next = loop.rk4_step(s, cfg.dt);
    next.t = static_cast<double>(step + 1) * cfg.dt;

    if (record) {
      const std::array<TimedSample, 3> window{TimedSample{s.t - cfg.dt, x_prev}, TimedSample{s.t, s.x},
                                              TimedSample{s.t + cfg.dt, next.x}};
      candidate.xdot_hat = estimate_state_derivative(window);
      loop.stack().try_insert(std::move(candidate));
    }

    x_prev = s.x;
    s = std::move(next);
    if ((step + 1) % cfg.log_every == 0 || step + 1 == steps) log.rows.push_back(make_row(loop, s));
  }

  log.final_stack = loop.stack();
  if (log.carries_multipliers) log.lambda_star = flatten(log.rows.back().lambdas);

  const Vec gamma = multiplier_metric(cfg);
  for (auto& r : log.rows) {
    if (log.carries_multipliers) {
      r.V = lyapunov_value(r.e, r.theta_tilde, flatten(r.lambdas) - log.lambda_star, cfg.law.P, gamma);
    } else {
      r.V = lyapunov_value(r.e, r.theta_tilde, Vec(), cfg.law.P, Vec());
    }
  }
  return log;
}

}  // namespace badapt
