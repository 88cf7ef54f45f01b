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

#include "badapt/analysis.hpp"
#include "badapt/config.hpp"
#include "badapt/model.hpp"
#include "badapt/sim.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <future>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string_view>

namespace badapt::cli {

namespace fs = std::filesystem;

namespace {

enum class Verbosity { Quiet, Info, Debug };

Verbosity verbosity() {
  const char* env = std::getenv("BADAPT_LOG");
  if (!env) return Verbosity::Info;
  const std::string_view v(env);
  if (v == "quiet" || v == "error") return Verbosity::Quiet;
  if (v == "debug") return Verbosity::Debug;
  return Verbosity::Info;
}

void info(std::ostream& err, const std::string& msg) {
  if (verbosity() != Verbosity::Quiet) err << "[badapt] " << msg << '\n';
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write '" + path.string() + "'");
  return os;
}

void prepare_out_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory '" + dir.string() + "': " + ec.message());
}

/// Outcome of one scenario, errors captured rather than thrown.
struct Outcome {
  std::optional<TrajectoryLog> log;
  int code = kOk;
  std::string error;
};

Outcome run_captured(const ScenarioConfig& cfg) {
  Outcome o;
  try {
    o.log = run_scenario(cfg);
  } catch (const BarrierBreach& ex) {
    o.code = kBarrierBreach;
    o.error = std::string("BarrierBreach: ") + ex.what();
  } catch (const NumericalDivergence& ex) {
    o.code = kNumericalDivergence;
    o.error = std::string("NumericalDivergence: ") + ex.what();
  }
  return o;
}

void write_log_csv(const TrajectoryLog& log, const fs::path& path) {
  auto os = open_output(path);
  write_trajectory_csv(log, os);
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

std::pair<double, double> steady_window(double t_final) {
  if (t_final >= 30.0) return {20.0, 30.0};
  return {t_final * 2.0 / 3.0, t_final};
}

RunMetrics summarize(const TrajectoryLog& log, double t_final) {
  RunMetrics m;
  const auto [t0, t1] = steady_window(t_final);
  m.steady_rms = log.tracking_rms(t0, t1);
  m.min_margin = log.min_margin();
  m.final_theta_tilde = log.final_theta_tilde_norm();
  m.final_error = log.final_error_norm();
  for (const auto& r : log.rows) {
    if (r.min_margin <= 0.0) ++m.violation_steps;
  }
  return m;
}

ScenarioConfig apply_sweep_value(ScenarioConfig cfg, const std::string& key, double value) {
  if (key == "k") {
    cfg.k = Vec::Constant(cfg.k.size(), value);
  } else if (key == "k_cl_scale") {
    cfg.law.k_cl *= value;
  } else if (key == "P_scale") {
    cfg.law.P *= value;
  } else if (key == "alpha") {
    for (auto& g : cfg.groups) g.alpha = value;
  } else if (key == "sigma2") {
    cfg.law.sigma2 = value;
  } else if (key == "gamma_inv_scale") {
    for (auto& g : cfg.groups) g.gamma_inv *= value;
  } else {
    throw ConfigError("--sweep-key", "unknown sweep key '" + key + "'");
  }
  cfg.name += "_" + key + "_" + format_double(value);
  cfg.validate();
  return cfg;
}

int cmd_run(const RunManifest& manifest, std::ostream& out, std::ostream& err) {
  std::vector<std::string> defaults;
  const ScenarioConfig cfg = load_config(manifest.config_path, &defaults);
  prepare_out_dir(manifest.out_dir);
  {
    auto echo = open_output(manifest.out_dir / "config.echo.json");
    echo << echo_config(cfg);
  }
  info(err, "running '" + cfg.name + "' (" + to_string(cfg.law.law) + ")");

  Outcome o = run_captured(cfg);
  auto summary = open_output(manifest.out_dir / "summary.txt");
  summary << "scenario = " << cfg.name << '\n' << "law = " << to_string(cfg.law.law) << '\n';
  if (!o.log) {
    summary << "status = failed\nerror = " << o.error << '\n';
    err << o.error << '\n';
    return o.code;
  }
  const TrajectoryLog& log = *o.log;
  write_log_csv(log, manifest.out_dir / "trajectory.csv");
  {
    auto stack_csv = open_output(manifest.out_dir / "stack.csv");
    log.final_stack->write_csv(stack_csv);
  }

  const RunMetrics m = summarize(log, cfg.t_final);
  const double sigma_bar1 = log.final_stack->excitation_level();
  const UubConstants consts = uub_constants(cfg, sigma_bar1, log.lambda_star);
  const EnvelopeReport env = envelope_check(log, consts);

  const PlantModel plant = plant_by_name(cfg.plant, cfg.theta_true);
  ClosedLoop loop(cfg);
  const LogRow& last = log.rows.back();
  std::vector<ConstraintGroup> groups;
  std::vector<MultiplierState> ms;
  if (log.carries_multipliers) {
    groups = loop.groups();
    ms = loop.multiplier_states(last.lambdas);
  }
  const KktResiduals kkt = kkt_residuals(cfg.law, last.e, eval_regressor(plant, last.x), *log.final_stack, groups,
                                         ms, last.theta_hat, plant.theta_true);

  summary.precision(10);
  summary << "status = ok\n"
          << "final_error_norm = " << m.final_error << '\n'
          << "final_theta_tilde_norm = " << m.final_theta_tilde << '\n'
          << "min_margin = " << m.min_margin << '\n'
          << "steady_tracking_rms = " << m.steady_rms << '\n'
          << "violation_steps = " << m.violation_steps << '\n';
  write_report_text(summary, consts, env, kkt);
  summary << "\n[config echo]\n";
  summary << "defaults_applied = ";
  for (std::size_t i = 0; i < defaults.size(); ++i) summary << (i ? "," : "") << defaults[i];
  summary << '\n' << echo_config(cfg);

  auto report = open_output(manifest.out_dir / "report.csv");
  report << report_csv_header() << '\n' << report_csv_row(cfg.name, consts, env, kkt) << '\n';

  out << "final_error_norm = " << m.final_error << "\nmin_margin = " << m.min_margin << '\n';
  return kOk;
}

int cmd_compare(const RunManifest& manifest, std::ostream& out, std::ostream& err) {
  if (manifest.laws.empty()) throw ConfigError("--laws", "law list is empty");
  const ScenarioConfig base = load_config(manifest.config_path);
  prepare_out_dir(manifest.out_dir);

  std::vector<std::future<Outcome>> jobs;
  for (auto law : manifest.laws) {
    ScenarioConfig cfg = base;
    cfg.law.law = law;
    jobs.push_back(std::async(std::launch::async, [cfg] { return run_captured(cfg); }));
  }

  auto table = open_output(manifest.out_dir / "compare.csv");
  table << "law,status,steady_rms,min_margin,final_theta_tilde_norm,violation_steps\n";
  table.precision(17);
  int code = kOk;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    Outcome o = jobs[i].get();
    const char* law = to_string(manifest.laws[i]);
    if (!o.log) {
      err << law << ": " << o.error << '\n';
      table << law << ",failed,nan,nan,nan,nan\n";
      code = o.code;
      continue;
    }
    write_log_csv(*o.log, manifest.out_dir / ("trajectory_" + std::to_string(i) + "_" + law + ".csv"));
    const RunMetrics m = summarize(*o.log, base.t_final);
    table << law << ",ok," << m.steady_rms << ',' << m.min_margin << ',' << m.final_theta_tilde << ','
          << m.violation_steps << '\n';
    out << law << ": final_theta_tilde_norm = " << m.final_theta_tilde << ", min_margin = " << m.min_margin << '\n';
  }
  return code;
}

int cmd_sweep(const RunManifest& manifest, std::ostream& out, std::ostream& err) {
  if (manifest.sweep_values.empty()) throw ConfigError("--sweep-values", "no sweep values given");
  const ScenarioConfig base = load_config(manifest.config_path);
  prepare_out_dir(manifest.out_dir);

  std::vector<std::future<Outcome>> jobs;
  for (double v : manifest.sweep_values) {
    ScenarioConfig cfg = apply_sweep_value(base, manifest.sweep_key, v);
    jobs.push_back(std::async(std::launch::async, [cfg] { return run_captured(cfg); }));
  }

  auto table = open_output(manifest.out_dir / "sweep.csv");
  table << "key,value,status,steady_rms,final_theta_tilde_norm,min_margin\n";
  table.precision(17);
  int code = kOk;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    Outcome o = jobs[i].get();
    const double v = manifest.sweep_values[i];
    table << manifest.sweep_key << ',' << v;
    if (!o.log) {
      err << manifest.sweep_key << "=" << v << ": " << o.error << '\n';
      table << ",failed,nan,nan,nan\n";
      code = o.code;
      continue;
    }
    const RunMetrics m = summarize(*o.log, base.t_final);
    table << ",ok," << m.steady_rms << ',' << m.final_theta_tilde << ',' << m.min_margin << '\n';
    out << manifest.sweep_key << " = " << v << ": steady_rms = " << m.steady_rms << '\n';
  }
  return code;
}

int dispatch(const RunManifest& manifest, std::ostream& out, std::ostream& err) {
  try {
    switch (manifest.command) {
      case Subcommand::Run: return cmd_run(manifest, out, err);
      case Subcommand::Compare: return cmd_compare(manifest, out, err);
      case Subcommand::Sweep: return cmd_sweep(manifest, out, err);
    }
  } catch (const ConfigError& ex) {
    err << "error: " << ex.what() << '\n';
    return kUsageError;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace badapt::cli
