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
#include "badapt/types.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace badapt {

struct LogRow {
  double t = 0.0;
  Vec x;
  Vec x_d;
  Vec e;
  Vec theta_hat;
  Vec theta_tilde;
  std::vector<Vec> lambdas;  ///< empty when the active law carries no multipliers
  Vec margins;               ///< one per constraint group
  double min_margin = 0.0;
  double V = 0.0;
  double excitation = 0.0;
  UpdateLaw law = UpdateLaw::Gradient;
};

struct TrajectoryLog {
  std::string scenario;
  int dim_state = 0;
  int dim_param = 0;
  std::vector<Eigen::Index> lambda_sizes;  ///< n_constraints per group
  bool carries_multipliers = false;
  std::vector<LogRow> rows;
  Vec lambda_star;  ///< multiplier estimate used for V (final logged lambdas)
  std::optional<HistoryStack> final_stack;

  /// Root mean square of ||e|| over logged rows with t in [t0, t1].
  double tracking_rms(double t0, double t1) const;
  double max_error_norm(double t0, double t1) const;
  double min_margin() const;
  double final_theta_tilde_norm() const;
  double final_error_norm() const;
};

/// Header plus one row per logged step, 17 significant digits.
void write_trajectory_csv(const TrajectoryLog& log, std::ostream& os);

std::vector<std::string> trajectory_csv_header(const TrajectoryLog& log);

}  // namespace badapt
