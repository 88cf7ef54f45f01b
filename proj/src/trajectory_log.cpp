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

#include "badapt/trajectory_log.hpp"

#include <cmath>
#include <limits>
#include <ostream>

namespace badapt {

double TrajectoryLog::tracking_rms(double t0, double t1) const {
  double acc = 0.0;
  std::size_t count = 0;
  for (const auto& r : rows) {
    if (r.t < t0 || r.t > t1) continue;
    acc += r.e.squaredNorm();
    ++count;
  }
  return count == 0 ? std::numeric_limits<double>::quiet_NaN() : std::sqrt(acc / static_cast<double>(count));
}

double TrajectoryLog::max_error_norm(double t0, double t1) const {
  double best = 0.0;
  for (const auto& r : rows) {
    if (r.t >= t0 && r.t <= t1) best = std::max(best, r.e.norm());
  }
  return best;
}

double TrajectoryLog::min_margin() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& r : rows) m = std::min(m, r.min_margin);
  return m;
}

double TrajectoryLog::final_theta_tilde_norm() const {
  return rows.empty() ? std::numeric_limits<double>::quiet_NaN() : rows.back().theta_tilde.norm();
}

double TrajectoryLog::final_error_norm() const {
  return rows.empty() ? std::numeric_limits<double>::quiet_NaN() : rows.back().e.norm();
}

std::vector<std::string> trajectory_csv_header(const TrajectoryLog& log) {
  std::vector<std::string> cols{"t"};
  auto add = [&cols](const std::string& stem, Eigen::Index count) {
    for (Eigen::Index i = 0; i < count; ++i) cols.push_back(stem + "_" + std::to_string(i));
  };
  add("x", log.dim_state);
  add("x_d", log.dim_state);
  add("e", log.dim_state);
  add("theta_hat", log.dim_param);
  add("theta_tilde", log.dim_param);
  for (std::size_t g = 0; g < log.lambda_sizes.size(); ++g) add("lambda_g" + std::to_string(g), log.lambda_sizes[g]);
  for (std::size_t g = 0; g < log.lambda_sizes.size(); ++g) cols.push_back("margin_g" + std::to_string(g));
  for (const char* c : {"min_margin", "V", "excitation", "law"}) cols.emplace_back(c);
  return cols;
}

void write_trajectory_csv(const TrajectoryLog& log, std::ostream& os) {
  const auto header = trajectory_csv_header(log);
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << '\n';
  const auto old = os.precision(17);
  auto put = [&os](const Vec& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) os << ',' << v[i];
  };
  for (const auto& r : log.rows) {
    os << r.t;
    put(r.x);
    put(r.x_d);
    put(r.e);
    put(r.theta_hat);
    put(r.theta_tilde);
    for (std::size_t g = 0; g < log.lambda_sizes.size(); ++g) {
      if (g < r.lambdas.size()) {
        put(r.lambdas[g]);
      } else {
        for (Eigen::Index i = 0; i < log.lambda_sizes[g]; ++i) os << ",nan";
      }
    }
    put(r.margins);
    os << ',' << r.min_margin << ',' << r.V << ',' << r.excitation << ',' << to_string(r.law) << '\n';
  }
  os.precision(old);
}

}  // namespace badapt
