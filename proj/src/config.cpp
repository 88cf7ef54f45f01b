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

#include "badapt/config.hpp"

#include "badapt/model.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace badapt {

using nlohmann::json;

namespace {

struct Reader {
  const json& obj;
  std::string prefix;
  std::vector<std::string>* defaults;
  std::set<std::string> seen;

  std::string key_name(const std::string& key) const { return prefix.empty() ? key : prefix + "." + key; }

  const json* find(const std::string& key) {
    seen.insert(key);
    auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
  }

  const json& require(const std::string& key) {
    const json* v = find(key);
    if (!v) throw ConfigError(key_name(key), "missing mandatory key");
    return *v;
  }

  void note_default(const std::string& key) {
    if (defaults) defaults->push_back(key_name(key));
  }

  double number(const json& v, const std::string& key) const {
    if (!v.is_number()) throw ConfigError(key_name(key), "expected a number");
    return v.get<double>();
  }

  double number_or(const std::string& key, double fallback) {
    const json* v = find(key);
    if (!v) {
      note_default(key);
      return fallback;
    }
    return number(*v, key);
  }

  std::string string_or(const std::string& key, const std::string& fallback, bool record_default = false) {
    const json* v = find(key);
    if (!v) {
      if (record_default) note_default(key);
      return fallback;
    }
    if (!v->is_string()) throw ConfigError(key_name(key), "expected a string");
    return v->get<std::string>();
  }

  long long integer_or(const std::string& key, long long fallback) {
    const json* v = find(key);
    if (!v) {
      note_default(key);
      return fallback;
    }
    if (!v->is_number_integer() && !v->is_number_unsigned()) throw ConfigError(key_name(key), "expected an integer");
    return v->get<long long>();
  }

  // Scalar promoted to `size` entries, or an array of any listed length.
  Vec vector(const json& v, const std::string& key, Eigen::Index size, std::initializer_list<Eigen::Index> allowed = {}) const {
    if (v.is_number()) return Vec::Constant(size, v.get<double>());
    if (!v.is_array()) throw ConfigError(key_name(key), "expected a number or an array of numbers");
    Vec out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number()) throw ConfigError(key_name(key), "entry " + std::to_string(i) + " is not a number");
      out[static_cast<Eigen::Index>(i)] = v[i].get<double>();
    }
    bool ok = out.size() == size;
    for (auto a : allowed) ok = ok || out.size() == a;
    if (!ok) {
      throw ConfigError(key_name(key), "expected " + std::to_string(size) + " entries, got " + std::to_string(out.size()));
    }
    return out;
  }

  void reject_unknown() const {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      if (!seen.count(it.key())) throw ConfigError(key_name(it.key()), "unknown key");
    }
  }
};

StackMode parse_stack_mode(const std::string& s, const std::string& key) {
  if (s == "online") return StackMode::Online;
  if (s == "offline") return StackMode::Offline;
  if (s == "none") return StackMode::None;
  throw ConfigError(key, "expected one of online|offline|none, got '" + s + "'");
}

GroupSpec parse_group(const json& node, const std::string& prefix, Eigen::Index p) {
  if (!node.is_object()) throw ConfigError(prefix, "expected an object");
  Reader r{node, prefix, nullptr, {}};
  const std::string kind = r.string_or("kind", "");
  const std::string barrier_name = r.string_or("barrier", "inverse");
  BarrierType barrier;
  if (barrier_name == "inverse") {
    barrier = BarrierType::Inverse;
  } else if (barrier_name == "log") {
    barrier = BarrierType::Log;
  } else {
    throw ConfigError(prefix + ".barrier", "expected inverse|log, got '" + barrier_name + "'");
  }
  const json* ext = r.find("allow_extension");
  const bool allow_extension = ext && ext->is_boolean() && ext->get<bool>();

  auto build = [&]() {
    try {
      if (kind == "component") {
        return ConstraintGroup::component(barrier, r.vector(r.require("lower"), "lower", p),
                                          r.vector(r.require("upper"), "upper", p));
      }
      if (kind == "norm") {
        if (barrier == BarrierType::Log && !allow_extension) {
          throw ConfigError(prefix + ".barrier", "log barrier on norm bounds is an extension; set allow_extension");
        }
        return ConstraintGroup::norm(barrier, r.number(r.require("lower"), "lower"),
                                     r.number(r.require("upper"), "upper"));
      }
    } catch (const ContractViolation& ex) {
      throw ConfigError(prefix, ex.what());
    }
    throw ConfigError(prefix + ".kind", "expected component|norm, got '" + kind + "'");
  };

  GroupSpec g{build(), Vec(), 0.1, Vec()};
  const Eigen::Index nc = g.group.n_constraints();
  Vec gamma_inv = r.vector(r.require("gamma_inv"), "gamma_inv", nc, {g.group.kind() == ConstraintKind::ComponentBounds ? p : nc});
  if (gamma_inv.size() != nc) {
    // one diagonal per side, shared by lower and upper multipliers
    Vec both(nc);
    both << gamma_inv, gamma_inv;
    gamma_inv = both;
  }
  g.gamma_inv = gamma_inv;
  g.alpha = r.number(r.require("alpha"), "alpha");
  g.lambda0 = r.vector(r.require("lambda0"), "lambda0", nc);
  r.reject_unknown();
  return g;
}

json to_array(const Vec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

}  // namespace

ScenarioConfig parse_config(std::string_view text, std::vector<std::string>* defaults_applied) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& ex) {
    throw ConfigError("<document>", std::string("malformed JSON: ") + ex.what());
  }
  if (!doc.is_object()) throw ConfigError("<document>", "top level must be an object");

  Reader r{doc, "", defaults_applied, {}};
  ScenarioConfig cfg;
  cfg.name = r.string_or("name", "scenario");
  cfg.plant = r.string_or("plant", "benchmark", true);
  if (const json* t = r.find("theta_true")) {
    if (!t->is_array()) throw ConfigError("theta_true", "expected an array");
    cfg.theta_true = r.vector(*t, "theta_true", static_cast<Eigen::Index>(t->size()));
  }
  PlantModel model;
  try {
    model = plant_by_name(cfg.plant, cfg.theta_true);
  } catch (const ContractViolation& ex) {
    throw ConfigError(cfg.theta_true.size() ? "theta_true" : "plant", ex.what());
  }
  const Eigen::Index n = model.dim_state;
  const Eigen::Index p = model.dim_param;
  cfg.trajectory = r.string_or("trajectory", "benchmark", true);

  const std::string law = r.string_or("law", "");
  if (law.empty()) throw ConfigError("law", "missing mandatory key");
  const auto parsed_law = parse_update_law(law);
  if (!parsed_law) throw ConfigError("law", "unknown update law '" + law + "'");
  cfg.law.law = *parsed_law;
  cfg.law.P = r.vector(r.require("P"), "P", p);
  cfg.law.k_cl = r.vector(r.require("k_cl"), "k_cl", p);
  cfg.law.sigma2 = r.number_or("sigma2", 0.0);
  cfg.k = r.vector(r.require("k"), "k", n);
  cfg.dt = r.number_or("dt", 1e-3);
  cfg.t_final = r.number_or("t_final", 30.0);
  cfg.log_every = static_cast<int>(r.integer_or("log_every", 10));
  cfg.x0 = r.vector(r.require("x0"), "x0", n);
  cfg.theta_hat0 = r.vector(r.require("theta_hat0"), "theta_hat0", p);
  cfg.seed = static_cast<std::uint64_t>(r.integer_or("seed", 0));

  if (const json* groups = r.find("constraints")) {
    if (!groups->is_array()) throw ConfigError("constraints", "expected an array");
    for (std::size_t j = 0; j < groups->size(); ++j) {
      cfg.groups.push_back(parse_group((*groups)[j], "constraints[" + std::to_string(j) + "]", p));
    }
  }

  const json* stack = r.find("stack");
  const json empty = json::object();
  if (stack && !stack->is_object()) throw ConfigError("stack", "expected an object");
  Reader s{stack ? *stack : empty, "stack", defaults_applied, {}};
  cfg.stack.mode = parse_stack_mode(s.string_or("mode", "online", true), "stack.mode");
  const long long capacity = s.integer_or("capacity", 20);
  if (capacity < 1) throw ConfigError("stack.capacity", "must be at least 1");
  cfg.stack.capacity = static_cast<std::size_t>(capacity);
  cfg.stack.record_every = static_cast<int>(s.integer_or("record_every", 50));
  cfg.stack.min_eig_threshold = s.number_or("min_eig_threshold", 1e-3);
  cfg.stack.offline_samples = static_cast<int>(s.integer_or("offline_samples", 20));
  cfg.stack.offline_span = s.number_or("offline_span", cfg.stack.offline_span);
  s.reject_unknown();
  r.reject_unknown();

  cfg.validate();
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path, std::vector<std::string>* defaults_applied) {
  std::ifstream in(path);
  if (!in) throw ConfigError("<file>", "cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), defaults_applied);
}

std::string echo_config(const ScenarioConfig& cfg) {
  json doc;
  doc["name"] = cfg.name;
  doc["plant"] = cfg.plant;
  if (cfg.theta_true.size()) doc["theta_true"] = to_array(cfg.theta_true);
  doc["trajectory"] = cfg.trajectory;
  doc["law"] = to_string(cfg.law.law);
  doc["P"] = to_array(cfg.law.P);
  doc["k_cl"] = to_array(cfg.law.k_cl);
  doc["sigma2"] = cfg.law.sigma2;
  doc["k"] = to_array(cfg.k);
  doc["dt"] = cfg.dt;
  doc["t_final"] = cfg.t_final;
  doc["log_every"] = cfg.log_every;
  doc["x0"] = to_array(cfg.x0);
  doc["theta_hat0"] = to_array(cfg.theta_hat0);
  doc["seed"] = cfg.seed;
  json groups = json::array();
  for (const auto& g : cfg.groups) {
    json node;
    node["kind"] = to_string(g.group.kind());
    node["barrier"] = to_string(g.group.barrier());
    if (g.group.kind() == ConstraintKind::ComponentBounds) {
      node["lower"] = to_array(g.group.lower());
      node["upper"] = to_array(g.group.upper());
    } else {
      node["lower"] = g.group.lower()[0];
      node["upper"] = g.group.upper()[0];
      if (g.group.barrier() == BarrierType::Log) node["allow_extension"] = true;
    }
    node["gamma_inv"] = to_array(g.gamma_inv);
    node["alpha"] = g.alpha;
    node["lambda0"] = to_array(g.lambda0);
    groups.push_back(node);
  }
  doc["constraints"] = groups;
  doc["stack"] = {{"mode", to_string(cfg.stack.mode)},
                  {"capacity", cfg.stack.capacity},
                  {"record_every", cfg.stack.record_every},
                  {"min_eig_threshold", cfg.stack.min_eig_threshold},
                  {"offline_samples", cfg.stack.offline_samples},
                  {"offline_span", cfg.stack.offline_span}};
  return doc.dump(2) + "\n";
}

}  // namespace badapt
