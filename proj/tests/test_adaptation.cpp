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
#include "badapt/model.hpp"

#include "test_util.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

namespace badapt {
namespace {

using testing::box_bounds;

struct Fixture {
  PlantModel plant = benchmark_plant();
  HistoryStack stack{2, 4, 20};
  std::vector<ConstraintGroup> groups{box_bounds()};
  std::vector<MultiplierState> ms;
  UpdateLawConfig cfg;

  explicit Fixture(std::uint64_t seed, bool scalar_kcl = false) {
    std::mt19937_64 rng(seed);
    for (int i = 0; i < 20; ++i) {
      const Vec x = testing::uniform_vec(rng, 2, -5, 5);
      const Vec u = testing::uniform_vec(rng, 2, -1, 1);
      const Mat y = eval_regressor(plant, x);
      stack.try_insert(StackEntry{y, u, y * plant.theta_true + u});
    }
    cfg.P = (Vec(4) << 0.075, 0.05, 0.1, 0.02).finished();
    cfg.k_cl = scalar_kcl ? Vec::Constant(4, 0.3) : (Vec(4) << 0.02, 0.5, 0.9, 0.02).finished();
    cfg.sigma2 = 0.01;
    ms.push_back(MultiplierState{testing::uniform_vec(rng, 8, 0, 5), Vec::Constant(8, 0.1), 0.1});
  }
};

TEST(LawNames, RoundTrip) {
  for (auto law : {UpdateLaw::Gradient, UpdateLaw::ConcurrentLearning, UpdateLaw::BarrierConstrained,
                   UpdateLaw::BarrierSigmaMod}) {
    EXPECT_EQ(parse_update_law(to_string(law)), law);
  }
  EXPECT_FALSE(parse_update_law("gradient").has_value());
  EXPECT_TRUE(uses_multipliers(UpdateLaw::BarrierSigmaMod));
  EXPECT_FALSE(uses_multipliers(UpdateLaw::ConcurrentLearning));
}

TEST(Projection, TruthTable) {
  const Vec a = (Vec(4) << -1.0, 2.0, -3.0, 4.0).finished();
  const Vec b = (Vec(4) << 0.0, 0.0, 1.0, 1.0).finished();
  const Vec want = (Vec(4) << 0.0, 2.0, -3.0, 4.0).finished();
  EXPECT_EQ(projection(a, b), want);
  EXPECT_EQ(projection((Vec(1) << 0.0).finished(), (Vec(1) << 0.0).finished())[0], 0.0);
  EXPECT_THROW(projection(a, -b), ContractViolation);
}

TEST(LambdaDot, Examples) {
  MultiplierState ms{(Vec(2) << 2.5, 0.0).finished(), (Vec(2) << 0.1, 0.1).finished(), 0.1};
  const Vec c = (Vec(2) << 1.0 / 6.0, -2.0).finished();
  const Vec ld = lambda_dot(ms, c);
  EXPECT_NEAR(ld[0], -0.25 + 0.1 / 6.0, 1e-15);
  EXPECT_NEAR(ld[0], -0.23333, 1e-5);
  // flow points below zero at lambda = 0: held at zero
  EXPECT_EQ(ld[1], 0.0);
  ms.lambda[1] = 0.0;
  EXPECT_NEAR(lambda_dot(ms, (Vec(2) << 0.0, 3.0).finished())[1], 0.3, 1e-15);
}

TEST(ThetaHatDot, GradientLaw) {
  Fixture f(1);
  f.cfg.law = UpdateLaw::Gradient;
  const Vec e = (Vec(2) << 0.3, -0.2).finished();
  const Vec th = (Vec(4) << 4.5, 8, 12, 15).finished();
  const Mat y = eval_regressor(f.plant, (Vec(2) << 1, 2).finished());
  const Vec got = theta_hat_dot(f.cfg, e, y, f.stack, f.groups, f.ms, th);
  EXPECT_EQ(got, (f.cfg.P.asDiagonal() * (y.transpose() * e)).eval());
}

TEST(ThetaHatDot, BarrierLawMatchesExplicitSum) {
  Fixture f(2);
  f.cfg.law = UpdateLaw::BarrierConstrained;
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    const Vec e = testing::uniform_vec(rng, 2, -1, 1);
    const Vec th = testing::feasible_point(rng, f.groups[0], 4);
    const Mat y = eval_regressor(f.plant, testing::uniform_vec(rng, 2, -5, 5));
    Vec want = y.transpose() * e;
    for (const auto& en : f.stack.entries()) {
      want += f.cfg.k_cl.cwiseProduct(en.Y.transpose() * (en.xdot_hat - en.u - en.Y * th));
    }
    for (int i = 0; i < 4; ++i) {
      const double sl = th[i] - f.groups[0].lower()[i];
      const double su = f.groups[0].upper()[i] - th[i];
      want[i] -= f.ms[0].lambda[i] * (-1.0 / (sl * sl)) + f.ms[0].lambda[4 + i] / (su * su);
    }
    want = f.cfg.P.cwiseProduct(want);
    const Vec got = theta_hat_dot(f.cfg, e, y, f.stack, f.groups, f.ms, th);
    ASSERT_LE((got - want).norm(), 1e-9 * std::max(1.0, want.norm()));
  }
}

TEST(ThetaHatDot, SigmaModLaw) {
  Fixture f(3);
  f.cfg.law = UpdateLaw::BarrierSigmaMod;
  const Vec e = (Vec(2) << 0.1, 0.4).finished();
  const Vec th = (Vec(4) << 4.5, 8, 12, 15).finished();
  const Mat y = eval_regressor(f.plant, (Vec(2) << -1, 2).finished());
  const Vec ws = weighted_gradient_sum(f.groups[0], th, f.ms[0].lambda);
  const Vec want = f.cfg.P.cwiseProduct(y.transpose() * e) - 0.01 * th - f.cfg.P.cwiseProduct(ws);
  EXPECT_LE((theta_hat_dot(f.cfg, e, y, f.stack, f.groups, f.ms, th) - want).norm(), 1e-13);
}

TEST(ThetaHatDot, ReductionsAreBitwise) {
  Fixture f(4);
  const Vec e = (Vec(2) << 0.7, -0.1).finished();
  const Vec th = (Vec(4) << 4.0, 9.0, 11.0, 19.0).finished();
  const Mat y = eval_regressor(f.plant, (Vec(2) << 2, -1).finished());
  UpdateLawConfig b = f.cfg, c = f.cfg, g = f.cfg;
  b.law = UpdateLaw::BarrierConstrained;
  c.law = UpdateLaw::ConcurrentLearning;
  g.law = UpdateLaw::Gradient;
  const std::vector<ConstraintGroup> none;
  const std::vector<MultiplierState> no_ms;
  EXPECT_EQ(theta_hat_dot(b, e, y, f.stack, none, no_ms, th), theta_hat_dot(c, e, y, f.stack, none, no_ms, th));
  const HistoryStack empty(2, 4);
  EXPECT_EQ(theta_hat_dot(c, e, y, empty, f.groups, f.ms, th), theta_hat_dot(g, e, y, empty, f.groups, f.ms, th));
}

TEST(ThetaHatDot, ArgumentChecks) {
  Fixture f(5);
  EXPECT_THROW(theta_hat_dot(f.cfg, Vec::Zero(3), Mat::Zero(2, 4), f.stack, f.groups, f.ms, Vec::Ones(4) * 5),
               ContractViolation);
  const std::vector<MultiplierState> no_ms;
  EXPECT_THROW(theta_hat_dot(f.cfg, Vec::Zero(2), Mat::Zero(2, 4), f.stack, f.groups, no_ms,
                             (Vec(4) << 4.5, 8, 12, 15).finished()),
               ContractViolation);
}

TEST(Lagrangian, ValueMatchesExplicitExpression) {
  Fixture f(6);
  const Vec e = (Vec(2) << 0.2, 0.5).finished();
  const Vec th = (Vec(4) << 4.5, 8, 12, 15).finished();
  const Mat y = eval_regressor(f.plant, (Vec(2) << 1, 1).finished());
  const Vec tt = f.plant.theta_true - th;
  double want = 0.0;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 4; ++c) want += e[r] * y(r, c) * tt[c];
  Mat g = Mat::Zero(4, 4);
  for (const auto& en : f.stack.entries()) g += en.Y.transpose() * en.Y;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) want += 0.5 * tt[i] * f.cfg.k_cl[i] * g(i, j) * tt[j];
  const Vec cv = barrier_values(f.groups[0], th);
  for (int j = 0; j < 8; ++j) want += f.ms[0].lambda[j] * cv[j];
  const double got = lagrangian_value(f.cfg, e, y, f.stack, f.groups, f.ms, th, f.plant.theta_true);
  EXPECT_NEAR(got, want, 1e-10 * std::abs(want));
}

TEST(Lagrangian, GradientMatchesCentralDifferences) {
  Fixture f(7);
  std::mt19937_64 rng(70);
  for (int trial = 0; trial < 50; ++trial) {
    const Vec e = testing::uniform_vec(rng, 2, -1, 1);
    const Vec th = testing::feasible_point(rng, f.groups[0], 4, 0.05);
    const Mat y = eval_regressor(f.plant, testing::uniform_vec(rng, 2, -3, 3));
    const Vec an = lagrangian_gradient(f.cfg, e, y, f.stack, f.groups, f.ms, th, f.plant.theta_true);
    const Vec fd = testing::central_gradient(
        [&](const Vec& v) { return lagrangian_value(f.cfg, e, y, f.stack, f.groups, f.ms, v, f.plant.theta_true); },
        th, 1e-6);
    ASSERT_LE((an - fd).norm(), 1e-5 * std::max(1.0, an.norm()));
  }
}

// With exact stack data and a scalar k_cl the barrier law is the scaled
// negative Lagrangian gradient.
TEST(Lagrangian, BarrierLawIsScaledNegativeGradient) {
  Fixture f(8, /*scalar_kcl=*/true);
  f.cfg.law = UpdateLaw::BarrierConstrained;
  std::mt19937_64 rng(80);
  for (int trial = 0; trial < 100; ++trial) {
    const Vec e = testing::uniform_vec(rng, 2, -1, 1);
    const Vec th = testing::feasible_point(rng, f.groups[0], 4);
    const Mat y = eval_regressor(f.plant, testing::uniform_vec(rng, 2, -5, 5));
    const Vec a = theta_hat_dot(f.cfg, e, y, f.stack, f.groups, f.ms, th);
    const Vec b =
        -f.cfg.P.cwiseProduct(lagrangian_gradient(f.cfg, e, y, f.stack, f.groups, f.ms, th, f.plant.theta_true));
    ASSERT_LE((a - b).norm(), 1e-9 * std::max(1.0, a.norm()));
  }
}

TEST(Lagrangian, ConvexInThetaHat) {
  Fixture f(9, true);
  std::mt19937_64 rng(90);
  const Vec e = (Vec(2) << 0.3, 0.3).finished();
  const Mat y = eval_regressor(f.plant, (Vec(2) << 1, -1).finished());
  auto L = [&](const Vec& v) { return lagrangian_value(f.cfg, e, y, f.stack, f.groups, f.ms, v, f.plant.theta_true); };
  for (int trial = 0; trial < 100; ++trial) {
    const Vec a = testing::feasible_point(rng, f.groups[0], 4);
    const Vec b = testing::feasible_point(rng, f.groups[0], 4);
    ASSERT_LE(L(0.5 * (a + b)), 0.5 * (L(a) + L(b)) + 1e-9 * std::max(1.0, std::abs(L(a))));
  }
}

// Scalar flow with constant c < 0: lambda decays to zero in finite time and
// stays there.
TEST(LambdaFlow, StaysNonNegativeAndMatchesPiecewiseSolution) {
  const double alpha = 0.5, g = 1.0, c = -2.0, lam0 = 1.0;
  MultiplierState ms{(Vec(1) << lam0).finished(), (Vec(1) << g).finished(), alpha};
  const double fp = g * c / alpha;
  const double t_hit = std::log((lam0 - fp) / (-fp)) / alpha;
  auto exact = [&](double t) { return t < t_hit ? (lam0 - fp) * std::exp(-alpha * t) + fp : 0.0; };
  const double h = 1e-4;
  double worst = 0.0;
  for (int i = 1; i <= 40000; ++i) {
    const double k1 = lambda_dot(ms, (Vec(1) << c).finished())[0];
    ms.lambda[0] = std::max(0.0, ms.lambda[0] + h * k1);
    ASSERT_GE(ms.lambda[0], 0.0);
    worst = std::max(worst, std::abs(ms.lambda[0] - exact(i * h)));
  }
  EXPECT_LE(worst, 1e-3);
  EXPECT_EQ(ms.lambda[0], 0.0);
}

}  // namespace
}  // namespace badapt
