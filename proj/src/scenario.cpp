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

#include "badapt/scenario.hpp"

#include "badapt/model.hpp"

#include <cmath>
#include <string>

namespace badapt {

bool GroupSpec::operator==(const GroupSpec& other) const {
  return group == other.group && gamma_inv == other.gamma_inv && alpha == other.alpha && lambda0 == other.lambda0;
}

const char* to_string(StackMode mode) {
  switch (mode) {
    case StackMode::None: return "none";
    case StackMode::Online: return "online";
    case StackMode::Offline: return "offline";
  }
  return "?";
}

bool ScenarioConfig::operator==(const ScenarioConfig& o) const {
  return name == o.name && plant == o.plant && theta_true == o.theta_true && trajectory == o.trajectory &&
         law.law == o.law.law && law.P == o.law.P && law.k_cl == o.law.k_cl && law.sigma2 == o.law.sigma2 &&
         groups == o.groups && k == o.k && dt == o.dt && t_final == o.t_final && log_every == o.log_every &&
         x0 == o.x0 && theta_hat0 == o.theta_hat0 && stack == o.stack && seed == o.seed;
}

namespace {

void require_len(const Vec& v, Eigen::Index n, const std::string& key) {
  if (v.size() != n) {
    throw ConfigError(key, "expected " + std::to_string(n) + " entries, got " + std::to_string(v.size()));
  }
}

void require_positive(const Vec& v, const std::string& key) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!(v[i] > 0.0) || !std::isfinite(v[i])) {
      throw ConfigError(key, "entry " + std::to_string(i) + " must be positive, got " + std::to_string(v[i]));
    }
  }
}

}  // namespace

void ScenarioConfig::validate() const {
  PlantModel model;
  try {
    model = plant_by_name(plant, theta_true);
  } catch (const ContractViolation& ex) {
    throw ConfigError(theta_true.size() ? "theta_true" : "plant", ex.what());
  }
  try {
    (void)trajectory_by_name(trajectory, model.dim_state);
  } catch (const ContractViolation& ex) {
    throw ConfigError("trajectory", ex.what());
  }
  const Eigen::Index n = model.dim_state;
  const Eigen::Index p = model.dim_param;

  require_len(law.P, p, "P");
  require_positive(law.P, "P");
  require_len(law.k_cl, p, "k_cl");
  require_positive(law.k_cl, "k_cl");
  if (!(law.sigma2 >= 0.0)) throw ConfigError("sigma2", "must be non-negative");
  require_len(k, n, "k");
  require_positive(k, "k");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("dt", "must be positive");
  if (!(t_final > 0.0) || !std::isfinite(t_final)) throw ConfigError("t_final", "must be positive");
  if (log_every < 1) throw ConfigError("log_every", "must be at least 1");
  require_len(x0, n, "x0");
  require_len(theta_hat0, p, "theta_hat0");
  if (stack.capacity < 1) throw ConfigError("stack.capacity", "must be at least 1");
  if (stack.record_every < 1) throw ConfigError("stack.record_every", "must be at least 1");
  if (!(stack.min_eig_threshold > 0.0)) throw ConfigError("stack.min_eig_threshold", "must be positive");
  if (stack.mode == StackMode::Offline) {
    if (stack.offline_samples < 1) throw ConfigError("stack.offline_samples", "must be at least 1");
    if (!(stack.offline_span > 0.0)) throw ConfigError("stack.offline_span", "must be positive");
  }

  for (std::size_t j = 0; j < groups.size(); ++j) {
    const auto& g = groups[j];
    const std::string base = "constraints[" + std::to_string(j) + "]";
    if (g.group.kind() == ConstraintKind::ComponentBounds && g.group.lower().size() != p) {
      throw ConfigError(base + ".lower", "expected " + std::to_string(p) + " bounds");
    }
    const Eigen::Index nc = g.group.n_constraints();
    require_len(g.gamma_inv, nc, base + ".gamma_inv");
    require_positive(g.gamma_inv, base + ".gamma_inv");
    if (!(g.alpha > 0.0)) throw ConfigError(base + ".alpha", "must be positive");
    require_len(g.lambda0, nc, base + ".lambda0");
    require_positive(g.lambda0, base + ".lambda0");

    const Vec slack = constraint_slacks(g.group, theta_hat0);
    for (Eigen::Index c = 0; c < slack.size(); ++c) {
      if (slack[c] > 0.0) continue;
      std::string which;
      if (g.group.kind() == ConstraintKind::ComponentBounds) {
        const Eigen::Index i = c % p;
        which = (c < p ? "lower" : "upper") + std::string(" bound on component ") + std::to_string(i);
      } else {
        which = c == 0 ? "lower norm bound" : "upper norm bound";
      }
      throw ConfigError("theta_hat0", "violates " + base + " " + which + " (slack " + std::to_string(slack[c]) + ")");
    }
  }
}

}  // namespace badapt
