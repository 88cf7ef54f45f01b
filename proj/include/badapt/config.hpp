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

#include "badapt/scenario.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace badapt {

/**
 * Parses a JSON scenario document.
 *
 * Mandatory keys: law, P, k_cl, k, x0, theta_hat0. Gains accept a scalar
 * (promoted to a scaled identity) or a full diagonal. Unknown keys are
 * rejected. Keys filled from defaults are appended to `defaults_applied`.
 * Throws ConfigError naming the offending key.
 */
ScenarioConfig parse_config(std::string_view text, std::vector<std::string>* defaults_applied = nullptr);

ScenarioConfig load_config(const std::filesystem::path& path, std::vector<std::string>* defaults_applied = nullptr);

/// Fully explicit JSON echo; parse_config(echo_config(c)) == c.
std::string echo_config(const ScenarioConfig& cfg);

}  // namespace badapt
