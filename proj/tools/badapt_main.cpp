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

#include "badapt/cli.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

namespace {

std::vector<badapt::UpdateLaw> parse_laws(const std::vector<std::string>& names) {
  std::vector<badapt::UpdateLaw> laws;
  for (const auto& n : names) {
    const auto law = badapt::parse_update_law(n);
    if (!law) throw CLI::ValidationError("--laws", "unknown update law '" + n + "'");
    laws.push_back(*law);
  }
  return laws;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Barrier-constrained adaptive tracking control simulator"};
  app.require_subcommand(1);

  badapt::cli::RunManifest manifest;
  std::string config;
  std::string out_dir = "out";
  std::vector<std::string> law_names;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("config,--config", config, "Scenario JSON file");
    sub->add_option("--out", out_dir, "Output directory")->capture_default_str();
  };

  auto* run = app.add_subcommand("run", "Run one scenario");
  add_common(run);

  auto* compare = app.add_subcommand("compare", "Run a scenario under several update laws");
  add_common(compare);
  compare->add_option("--laws", law_names, "Comma-separated update laws")->delimiter(',');

  auto* sweep = app.add_subcommand("sweep", "Run a scenario across gain values");
  add_common(sweep);
  sweep->add_option("--sweep-key", manifest.sweep_key, "k | k_cl_scale | P_scale | alpha | sigma2 | gamma_inv_scale")
      ->required();
  sweep->add_option("--sweep-values", manifest.sweep_values, "Comma-separated values")->delimiter(',')->required();

  try {
    app.parse(argc, argv);
    if (config.empty()) throw CLI::RequiredError("config");
    if (!law_names.empty()) manifest.laws = parse_laws(law_names);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : badapt::cli::kUsageError;
  }

  manifest.config_path = config;
  manifest.out_dir = out_dir;
  if (run->parsed()) manifest.command = badapt::cli::Subcommand::Run;
  if (compare->parsed()) manifest.command = badapt::cli::Subcommand::Compare;
  if (sweep->parsed()) manifest.command = badapt::cli::Subcommand::Sweep;
  return badapt::cli::dispatch(manifest, std::cout, std::cerr);
}
