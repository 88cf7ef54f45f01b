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

#include "badapt/barrier.hpp"
#include "badapt/config.hpp"
#include "badapt/types.hpp"

#include <filesystem>
#include <random>
#include <string>

namespace badapt::testing {

inline std::filesystem::path scenario_path(const std::string& name) {
  return std::filesystem::path(BADAPT_SCENARIO_DIR) / name;
}

inline ScenarioConfig bundled(const std::string& name) { return load_config(scenario_path(name)); }

inline Vec uniform_vec(std::mt19937_64& rng, Eigen::Index n, double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  Vec v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = d(rng);
  return v;
}

/// Uniform point inside the group's feasible set, kept `pad` (relative) away
/// from every boundary.
inline Vec feasible_point(std::mt19937_64& rng, const ConstraintGroup& g, Eigen::Index p, double pad = 1e-2) {
  if (g.kind() == ConstraintKind::ComponentBounds) {
    Vec out(p);
    for (Eigen::Index i = 0; i < p; ++i) {
      const double w = g.upper()[i] - g.lower()[i];
      std::uniform_real_distribution<double> d(g.lower()[i] + pad * w, g.upper()[i] - pad * w);
      out[i] = d(rng);
    }
    return out;
  }
  std::normal_distribution<double> n01;
  Vec dir(p);
  for (Eigen::Index i = 0; i < p; ++i) dir[i] = n01(rng);
  const double lo = g.lower()[0], hi = g.upper()[0];
  std::uniform_real_distribution<double> r(lo + pad * (hi - lo), hi - pad * (hi - lo));
  return r(rng) * dir.normalized();
}

/// Central-difference gradient of a scalar function.
template <class F>
Vec central_gradient(F&& f, const Vec& x, double h) {
  Vec g(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    Vec xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    g[i] = (f(xp) - f(xm)) / (2.0 * h);
  }
  return g;
}

inline ConstraintGroup box_bounds(BarrierType b = BarrierType::Inverse) {
  return ConstraintGroup::component(b, (Vec(4) << 3, 6, 10, 12).finished(), (Vec(4) << 6, 12, 17, 22).finished());
}

}  // namespace badapt::testing
