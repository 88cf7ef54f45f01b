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
#include "badapt/barrier.hpp"
#include "badapt/types.hpp"

#include <cstddef>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

namespace badapt {

/// Constraint group together with its multiplier gains and initial value.
struct GroupSpec {
  ConstraintGroup group;
  Vec gamma_inv;  ///< one entry per constraint
  double alpha = 0.1;
  Vec lambda0;

  bool operator==(const GroupSpec& other) const;
};

enum class StackMode { None, Online, Offline };

const char* to_string(StackMode mode);

struct StackPolicy {
  StackMode mode = StackMode::Online;
  std::size_t capacity = 20;
  int record_every = 50;  ///< integration steps between online candidates
  double min_eig_threshold = 1e-3;
  // Offline prefill: samples of the exact model along the desired trajectory
  // at t = span * i / samples, i = 1..samples.
  int offline_samples = 20;
  double offline_span = 2.0 * std::numbers::pi;

  bool operator==(const StackPolicy& other) const = default;
};

struct ScenarioConfig {
  std::string name;
  std::string plant = "benchmark";
  Vec theta_true;  ///< empty selects the plant's default
  std::string trajectory = "benchmark";
  UpdateLawConfig law;
  std::vector<GroupSpec> groups;
  Vec k;  ///< control gain diagonal (n)
  double dt = 1e-3;
  double t_final = 30.0;
  int log_every = 10;
  Vec x0;
  Vec theta_hat0;
  StackPolicy stack;
  std::uint64_t seed = 0;

  bool operator==(const ScenarioConfig& other) const;

  /// Checks every invariant against the resolved plant dimensions; throws
  /// ConfigError naming the offending key.
  void validate() const;
};

}  // namespace badapt
