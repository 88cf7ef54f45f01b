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

#include "badapt/analysis.hpp"
#include "badapt/config.hpp"
#include "badapt/integrator.hpp"
#include "badapt/sim.hpp"

#include "test_util.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <sstream>

namespace badapt {
namespace {

// Scalar linear plant with an unknown pole, regulated to zero by the
// gradient law. Smooth and nonlinear through theta_hat_dot = P x^2.
ScenarioConfig linear_config() {
  return parse_config(R"({
    "name": "linear", "plant": "linear", "theta_true": [0.5], "trajectory": "zero",
    "law": "Gradient", "P": 1.0, "k_cl": 1.0, "k": 1.0,
    "x0": [1.0], "theta_hat0": [0.0], "t_final": 1.0, "stack": {"mode": "none"}
  })");
}

Vec integrate(const ClosedLoop& loop, double t_end, double dt) {
  CompositeState s = loop.initial_state();
  const auto n = std::llround(t_end / dt);
  for (long long i = 0; i < n; ++i) s = loop.rk4_step(s, dt);
  Vec out(s.x.size() + s.theta_hat.size());
  out << s.x, s.theta_hat;
  return out;
}

TEST(ControlInput, Examples) {
  const Mat y = (Mat(1, 1) << 2.0).finished();
  const Vec u = control_input((Vec(1) << 1.0).finished(), (Vec(1) << 0.5).finished(), (Vec(1) << 3.0).finished(),
                              (Vec(1) << 1.5).finished(), y, (Vec(1) << 4.0).finished());
  // 3 - 2*1.5 - 4*0.5
  EXPECT_DOUBLE_EQ(u[0], -2.0);
  EXPECT_THROW(control_input(Vec::Zero(2), Vec::Zero(1), Vec::Zero(2), Vec::Zero(1), Mat::Zero(2, 1), Vec::Ones(2)),
               ContractViolation);
}

TEST(ClosedLoopRhs, LinearExample) {
  ClosedLoop loop(linear_config());
  const CompositeDerivative d = loop.rhs(loop.initial_state());
  // x' = (theta - theta_hat) x - k x = 0.5 - 1
  EXPECT_DOUBLE_EQ(d.x_dot[0], -0.5);
  EXPECT_DOUBLE_EQ(d.theta_hat_dot[0], 1.0);
  EXPECT_TRUE(d.lambda_dot.empty());
  EXPECT_FALSE(loop.carries_multipliers());
}

TEST(ClosedLoopRhs, PerfectEstimateCancelsDrift) {
  ScenarioConfig cfg = testing::bundled("box_inverse.json");
  cfg.theta_hat0 = (Vec(4) << 5, 10, 15, 20).finished();
  cfg.x0 = Vec::Zero(2);
  ClosedLoop loop(cfg);
  const CompositeDerivative d = loop.rhs(loop.initial_state());
  EXPECT_LE((d.x_dot - desired_eval(benchmark_trajectory(), 0.0).xdot_d).norm(), 1e-12);
  ASSERT_EQ(d.lambda_dot.size(), 1u);
  EXPECT_EQ(d.lambda_dot[0].size(), 8);
}

TEST(ClosedLoopRhs, NonFiniteStateDiverges) {
  ClosedLoop loop(linear_config());
  CompositeState s = loop.initial_state();
  s.x[0] = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(loop.rhs(s), NumericalDivergence);
  EXPECT_THROW(loop.rk4_step(s, 0.01), NumericalDivergence);
}

TEST(Rk4, ExponentialAnchor) {
  const Vec y = rk4_advance([](double, const Vec& v) { return Vec(-v); }, 0.0, (Vec(1) << 1.0).finished(), 0.1);
  EXPECT_NEAR(y[0], 0.9048375, 1e-7);
  EXPECT_NEAR(y[0], 1 - 0.1 + 0.005 - 0.1 * 0.1 * 0.1 / 6 + 1e-4 / 24, 1e-15);
}

TEST(Rk4, LocalAndGlobalErrorRatios) {
  auto f = [](double, const Vec& v) { return Vec(-v); };
  const Vec one = (Vec(1) << 1.0).finished();
  const double l1 = std::abs(rk4_advance(f, 0.0, one, 0.1)[0] - std::exp(-0.1));
  const double l2 = std::abs(rk4_advance(f, 0.0, one, 0.05)[0] - std::exp(-0.05));
  // the one-step error is O(h^5)
  EXPECT_NEAR(l1 / l2, 32.0, 2.0);

  auto global = [&](double h) {
    Vec y = one;
    for (int i = 0; i < std::lround(1.0 / h); ++i) y = rk4_advance(f, i * h, y, h);
    return std::abs(y[0] - std::exp(-1.0));
  };
  EXPECT_NEAR(global(0.1) / global(0.05), 16.0, 1.0);
}

TEST(Rk4, ZeroDynamicsAreStationary) {
  const Vec y0 = (Vec(3) << 1, -2, 3).finished();
  EXPECT_EQ(rk4_advance([](double, const Vec& v) { return Vec(Vec::Zero(v.size())); }, 0.0, y0, 0.5), y0);
}

TEST(Rk4, ClosedLoopIsFourthOrder) {
  ClosedLoop loop(linear_config());
  const Vec ref = integrate(loop, 1.0, 0.01 / 64);
  std::vector<double> err;
  for (double dt : {0.01, 0.005, 0.0025}) err.push_back((integrate(loop, 1.0, dt) - ref).norm());
  for (int i = 0; i + 1 < 3; ++i) {
    const double ratio = err[i] / err[i + 1];
    EXPECT_GE(ratio, 8.0) << i;
    EXPECT_LE(ratio, 32.0) << i;
  }
}

TEST(Rk4, BenchmarkLoopRichardson) {
  ScenarioConfig cfg = testing::bundled("box_inverse.json");
  cfg.stack.mode = StackMode::None;
  ClosedLoop loop(cfg);
  const Vec a = integrate(loop, 0.5, 2e-3);
  const Vec b = integrate(loop, 0.5, 1e-3);
  const Vec c = integrate(loop, 0.5, 5e-4);
  const double ratio = (a - b).norm() / (b - c).norm();
  EXPECT_GE(ratio, 8.0);
  EXPECT_LE(ratio, 32.0);
}

TEST(Bisection, OversizedStepBreaches) {
  ScenarioConfig cfg = testing::bundled("box_inverse.json");
  cfg.dt = 10.0;
  try {
    run_scenario(cfg);
    FAIL() << "expected BarrierBreach";
  } catch (const BarrierBreach& ex) {
    EXPECT_GE(ex.time(), 0.0);
    EXPECT_LE(ex.time(), 10.0);
  }
}

TEST(Bisection, StepStaysFeasibleAndNonNegative) {
  ScenarioConfig cfg = testing::bundled("box_inverse.json");
  cfg.t_final = 1.0;
  const TrajectoryLog log = run_scenario(cfg);
  for (const auto& r : log.rows) {
    ASSERT_GT(r.min_margin, 0.0);
    for (const auto& l : r.lambdas) ASSERT_GE(l.minCoeff(), 0.0);
  }
}

TEST(RunScenario, LoggingCadenceAndTimes) {
  ScenarioConfig cfg = linear_config();
  cfg.dt = 0.01;
  cfg.log_every = 7;
  const TrajectoryLog log = run_scenario(cfg);
  // step 0, every 7th of 100 steps, and the final step
  EXPECT_EQ(log.rows.size(), 1u + 14u + 1u);
  EXPECT_EQ(log.rows.front().t, 0.0);
  EXPECT_EQ(log.rows[1].t, 0.07);
  EXPECT_EQ(log.rows.back().t, 1.0);
}

TEST(RunScenario, SanityHoldsTrackingBound) {
  const ScenarioConfig cfg = testing::bundled("sanity.json");
  const TrajectoryLog log = run_scenario(cfg);
  ASSERT_TRUE(log.final_stack.has_value());
  const double sigma = log.final_stack->excitation_level();
  EXPECT_GT(sigma, 0.0);
  const UubConstants c = uub_constants(cfg, sigma, Vec());
  const EnvelopeReport env = envelope_check(log, c);
  EXPECT_TRUE(env.all_satisfied()) << env.worst_ratio;
  EXPECT_LT(log.final_error_norm(), 1e-3);
}

TEST(RunScenario, Deterministic) {
  ScenarioConfig cfg = testing::bundled("box_inverse.json");
  cfg.t_final = 2.0;
  std::ostringstream a, b;
  write_trajectory_csv(run_scenario(cfg), a);
  write_trajectory_csv(run_scenario(cfg), b);
  EXPECT_EQ(a.str(), b.str());
}

TEST(RunScenario, SwitchesToFullLawOnceExciting) {
  ScenarioConfig cfg = testing::bundled("box_inverse.json");
  cfg.t_final = 3.0;
  const TrajectoryLog log = run_scenario(cfg);
  EXPECT_EQ(log.rows.front().law, UpdateLaw::BarrierSigmaMod);
  EXPECT_EQ(log.rows.back().law, UpdateLaw::BarrierConstrained);
  EXPECT_GE(log.rows.back().excitation, cfg.stack.min_eig_threshold);
}

TEST(SelectLaw, OnlyBarrierOnlineFallsBack) {
  ScenarioConfig cfg = testing::bundled("box_inverse.json");
  const HistoryStack empty(2, 4);
  EXPECT_EQ(select_active_law(cfg, empty), UpdateLaw::BarrierSigmaMod);
  cfg.stack.mode = StackMode::Offline;
  EXPECT_EQ(select_active_law(cfg, empty), UpdateLaw::BarrierConstrained);
  cfg.stack.mode = StackMode::Online;
  cfg.law.law = UpdateLaw::ConcurrentLearning;
  EXPECT_EQ(select_active_law(cfg, empty), UpdateLaw::ConcurrentLearning);
}

}  // namespace
}  // namespace badapt
