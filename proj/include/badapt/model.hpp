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

#include <functional>
#include <string>
#include <utility>

namespace badapt {

/**
 * Control-affine plant with linearly parametrized drift,
 *
 *   xdot = Y(x) theta + u,
 *
 * where Y maps the n-dimensional state to an n x p regressor.
 */
struct PlantModel {
  std::string name;
  int dim_state = 0;
  int dim_param = 0;
  std::function<Mat(const Vec&)> regressor;
  Vec theta_true;
};

/// Desired state and its analytic time derivative.
struct DesiredSample {
  Vec x_d;
  Vec xdot_d;
};

struct DesiredTrajectory {
  std::string name;
  int dim_state = 0;
  std::function<DesiredSample(double)> eval;
};

Mat eval_regressor(const PlantModel& model, const Vec& x);

Vec plant_derivative(const PlantModel& model, const Vec& x, const Vec& u);

DesiredSample desired_eval(const DesiredTrajectory& traj, double t);

/// Two-state benchmark with regressor rows [x1^2, sin x2, 0, 0] and
/// [0, x2 sin x1, x1, x1 x2]. Default parameters are [5, 10, 15, 20].
PlantModel benchmark_plant();
PlantModel benchmark_plant(const Vec& theta);

/// Decoupled linear plant xdot_i = theta_i x_i + u_i (Y(x) = diag(x)).
PlantModel linear_plant(const Vec& theta);

/// x_d(t) = 10 (1 - exp(-0.1 t)) [sin 2t, 0.4 cos 3t].
DesiredTrajectory benchmark_trajectory();

/// x_d = 0 in R^n.
DesiredTrajectory zero_trajectory(int dim_state);

/// Registry lookup: "benchmark" or "linear". `theta` overrides the default
/// parameter vector when non-empty (required for "linear").
PlantModel plant_by_name(const std::string& name, const Vec& theta = Vec());

/// Registry lookup: "benchmark" or "zero".
DesiredTrajectory trajectory_by_name(const std::string& name, int dim_state);

}  // namespace badapt
