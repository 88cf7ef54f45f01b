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

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace badapt::cli {

enum class Subcommand { Run, Compare, Sweep };

struct RunManifest {
  Subcommand command = Subcommand::Run;
  std::filesystem::path config_path;
  std::filesystem::path out_dir = "out";
  std::vector<UpdateLaw> laws{UpdateLaw::Gradient, UpdateLaw::ConcurrentLearning, UpdateLaw::BarrierConstrained};
  std::string sweep_key;
  std::vector<double> sweep_values;
};

enum ExitCode : int {
  kOk = 0,
  kUsageError = 1,
  kBarrierBreach = 2,
  kNumericalDivergence = 3,
};

/// Steady-state window: [20, 30] s for the default horizon, else the last third.
std::pair<double, double> steady_window(double t_final);

/// Summary metrics of one finished run.
struct RunMetrics {
  double steady_rms = 0.0;
  double min_margin = 0.0;
  double final_theta_tilde = 0.0;
  double final_error = 0.0;
  std::size_t violation_steps = 0;  ///< logged rows with a non-positive margin
};

RunMetrics summarize(const TrajectoryLog& log, double t_final);

/// Keys accepted by `sweep`: k, k_cl_scale, P_scale, alpha, sigma2, gamma_inv_scale.
ScenarioConfig apply_sweep_value(ScenarioConfig cfg, const std::string& key, double value);

int cmd_run(const RunManifest& manifest, std::ostream& out, std::ostream& err);
int cmd_compare(const RunManifest& manifest, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunManifest& manifest, std::ostream& out, std::ostream& err);

int dispatch(const RunManifest& manifest, std::ostream& out, std::ostream& err);

}  // namespace badapt::cli
