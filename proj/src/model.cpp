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

#include "badapt/model.hpp"

#include <cmath>

namespace badapt {

Mat eval_regressor(const PlantModel& model, const Vec& x) {
  detail::require_size(x.size(), model.dim_state, "eval_regressor: state");
  Mat y = model.regressor(x);
  if (y.rows() != model.dim_state || y.cols() != model.dim_param) {
    throw ContractViolation("eval_regressor: regressor of plant '" + model.name +
                            "' returned wrong shape");
  }
  return y;
}

Vec plant_derivative(const PlantModel& model, const Vec& x, const Vec& u) {
  detail::require_size(u.size(), model.dim_state, "plant_derivative: input");
  return eval_regressor(model, x) * model.theta_true + u;
}

DesiredSample desired_eval(const DesiredTrajectory& traj, double t) { return traj.eval(t); }

PlantModel benchmark_plant() { return benchmark_plant((Vec(4) << 5.0, 10.0, 15.0, 20.0).finished()); }

PlantModel benchmark_plant(const Vec& theta) {
  detail::require_size(theta.size(), 4, "benchmark_plant: theta");
  PlantModel m;
  m.name = "benchmark";
  m.dim_state = 2;
  m.dim_param = 4;
  m.theta_true = theta;
  m.regressor = [](const Vec& x) {
    const double x1 = x[0];
    const double x2 = x[1];
    Mat y = Mat::Zero(2, 4);
    y(0, 0) = x1 * x1;
    y(0, 1) = std::sin(x2);
    y(1, 1) = x2 * std::sin(x1);
    y(1, 2) = x1;
    y(1, 3) = x1 * x2;
    return y;
  };
  return m;
}

PlantModel linear_plant(const Vec& theta) {
  detail::require(theta.size() > 0, "linear_plant: empty theta");
  PlantModel m;
  m.name = "linear";
  m.dim_state = static_cast<int>(theta.size());
  m.dim_param = m.dim_state;
  m.theta_true = theta;
  m.regressor = [](const Vec& x) -> Mat { return x.asDiagonal(); };
  return m;
}

DesiredTrajectory benchmark_trajectory() {
  DesiredTrajectory tr;
  tr.name = "benchmark";
  tr.dim_state = 2;
  tr.eval = [](double t) {
    const double decay = std::exp(-0.1 * t);
    const double amp = 10.0 * (1.0 - decay);
    const double damp = decay;  // d/dt of 10 (1 - exp(-0.1 t))
    const double s2 = std::sin(2.0 * t);
    const double c2 = std::cos(2.0 * t);
    const double s3 = std::sin(3.0 * t);
    const double c3 = std::cos(3.0 * t);
    DesiredSample out{Vec(2), Vec(2)};
    out.x_d << amp * s2, amp * 0.4 * c3;
    out.xdot_d << damp * s2 + amp * 2.0 * c2, damp * 0.4 * c3 - amp * 1.2 * s3;
    return out;
  };
  return tr;
}

DesiredTrajectory zero_trajectory(int dim_state) {
  DesiredTrajectory tr;
  tr.name = "zero";
  tr.dim_state = dim_state;
  tr.eval = [dim_state](double) { return DesiredSample{Vec::Zero(dim_state), Vec::Zero(dim_state)}; };
  return tr;
}

PlantModel plant_by_name(const std::string& name, const Vec& theta) {
  if (name == "benchmark") return theta.size() == 0 ? benchmark_plant() : benchmark_plant(theta);
  if (name == "linear") {
    if (theta.size() == 0) throw ContractViolation("plant 'linear' needs an explicit theta");
    return linear_plant(theta);
  }
  throw ContractViolation("unknown plant '" + name + "'");
}

DesiredTrajectory trajectory_by_name(const std::string& name, int dim_state) {
  if (name == "benchmark") {
    if (dim_state != 2) throw ContractViolation("trajectory 'benchmark' is two-dimensional");
    return benchmark_trajectory();
  }
  if (name == "zero") return zero_trajectory(dim_state);
  throw ContractViolation("unknown trajectory '" + name + "'");
}

}  // namespace badapt
