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

#include "badapt/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

namespace badapt {

double lyapunov_value(const Vec& e, const Vec& theta_tilde, const Vec& lambda_tilde, const Vec& P,
                      const Vec& Gamma) {
  detail::require_size(P.size(), theta_tilde.size(), "lyapunov_value: P");
  detail::require_size(Gamma.size(), lambda_tilde.size(), "lyapunov_value: Gamma");
  detail::require((P.array() > 0.0).all(), "lyapunov_value: P must be positive definite");
  detail::require((Gamma.array() > 0.0).all(), "lyapunov_value: Gamma must be positive definite");
  return 0.5 * e.squaredNorm() + 0.5 * theta_tilde.dot(P.cwiseInverse().cwiseProduct(theta_tilde)) +
         0.5 * lambda_tilde.dot(Gamma.cwiseProduct(lambda_tilde));
}

Vec multiplier_metric(const ScenarioConfig& cfg) {
  Eigen::Index size = 0;
  for (const auto& g : cfg.groups) size += g.gamma_inv.size();
  Vec gamma(size);
  Eigen::Index off = 0;
  for (const auto& g : cfg.groups) {
    gamma.segment(off, g.gamma_inv.size()) = g.gamma_inv.cwiseInverse();
    off += g.gamma_inv.size();
  }
  return gamma;
}

UubConstants uub_constants(const ScenarioConfig& cfg, double sigma_bar1, const Vec& lambda_star,
                           double alpha1_fraction) {
  detail::require(sigma_bar1 >= 0.0, "uub_constants: sigma_bar1 must be non-negative");
  detail::require(alpha1_fraction > 0.0 && alpha1_fraction < 1.0, "uub_constants: alpha split must lie in (0, 1)");
  detail::require(cfg.law.P.size() > 0 && cfg.k.size() > 0, "uub_constants: empty gains");

  UubConstants c;
  c.sigma_bar1 = sigma_bar1;
  c.excitation_met = sigma_bar1 > 0.0;
  c.has_multipliers = uses_multipliers(cfg.law.law) && !cfg.groups.empty();
  c.lambda_star = lambda_star;

  const Vec p_inv = cfg.law.P.cwiseInverse();
  c.Lambda_min = std::min(0.5, 0.5 * p_inv.minCoeff());
  c.Lambda_max = std::max(0.5, 0.5 * p_inv.maxCoeff());

  double rate = cfg.k.minCoeff();
  if (c.excitation_met) rate = std::min(rate, cfg.law.k_cl.minCoeff() * sigma_bar1);

  if (c.has_multipliers) {
    const Vec gamma = multiplier_metric(cfg);
    detail::require_size(lambda_star.size(), gamma.size(), "uub_constants: lambda_star");
    c.gamma_min = gamma.minCoeff();
    c.Lambda_min = std::min(c.Lambda_min, 0.5 * c.gamma_min);
    c.Lambda_max = std::max(c.Lambda_max, 0.5 * gamma.maxCoeff());

    double alpha = std::numeric_limits<double>::infinity();
    for (const auto& g : cfg.groups) alpha = std::min(alpha, g.alpha);
    c.alpha1 = alpha1_fraction * alpha;
    c.alpha2 = alpha - c.alpha1;
    rate = std::min(rate, c.alpha1 * c.gamma_min);
    c.beta2 = alpha * alpha * c.gamma_min * lambda_star.squaredNorm() / (4.0 * c.alpha2);
  }
  c.beta1 = rate / c.Lambda_min;
  return c;
}

EnvelopeReport envelope_check(const TrajectoryLog& log, const UubConstants& consts) {
  EnvelopeReport rep;
  if (log.rows.empty()) return rep;

  auto z_sq = [&](const LogRow& r) {
    double acc = r.e.squaredNorm() + r.theta_tilde.squaredNorm();
    if (consts.has_multipliers && !r.lambdas.empty()) {
      Eigen::Index off = 0;
      for (const auto& l : r.lambdas) {
        if (consts.lambda_star.size() >= off + l.size()) {
          acc += (l - consts.lambda_star.segment(off, l.size())).squaredNorm();
        }
        off += l.size();
      }
    }
    return acc;
  };

  const double t0 = log.rows.front().t;
  const double z0 = z_sq(log.rows.front());
  const double ratio0 = consts.Lambda_max / consts.Lambda_min;
  for (const auto& r : log.rows) {
    const double decay = std::exp(-consts.beta1 * (r.t - t0));
    const double offset =
        consts.beta1 > 0.0 ? consts.beta2 / (consts.beta1 * consts.Lambda_min) * (1.0 - decay) : 0.0;
    const double bound = ratio0 * z0 * decay + offset;
    const double z = z_sq(r);
    const double ratio = bound > 0.0 ? z / bound : (z > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
    rep.worst_ratio = std::max(rep.worst_ratio, ratio);
    ++rep.steps;
    // relative slack absorbs round-off where the bound is attained exactly
    if (z <= bound * (1.0 + 1e-9)) {
      ++rep.satisfied;
    } else {
      rep.violation_times.push_back(r.t);
    }
  }
  rep.fraction = static_cast<double>(rep.satisfied) / static_cast<double>(rep.steps);
  return rep;
}

KktResiduals kkt_residuals(const UpdateLawConfig& cfg, const Vec& e, const Mat& Y, const HistoryStack& stack,
                           std::span<const ConstraintGroup> groups, std::span<const MultiplierState> multipliers,
                           const Vec& theta_hat, const Vec& theta_true) {
  KktResiduals out;
  out.stationarity = lagrangian_gradient(cfg, e, Y, stack, groups, multipliers, theta_hat, theta_true).norm();
  for (std::size_t j = 0; j < groups.size(); ++j) {
    const auto& ms = multipliers[j];
    const Vec c = barrier_values(groups[j], theta_hat);
    const Vec flow = -ms.alpha * ms.lambda + ms.gamma_inv.cwiseProduct(c);
    out.comp_slack = std::max(out.comp_slack, ms.lambda.cwiseProduct(flow).cwiseAbs().maxCoeff());
  }
  return out;
}

void write_report_text(std::ostream& os, const UubConstants& c, const EnvelopeReport& env,
                       const KktResiduals& kkt) {
  const auto old = os.precision(10);
  os << "Lambda_min = " << c.Lambda_min << '\n'
     << "Lambda_max = " << c.Lambda_max << '\n'
     << "beta1 = " << c.beta1 << '\n'
     << "beta2 = " << c.beta2 << '\n'
     << "gamma_min = " << c.gamma_min << '\n'
     << "alpha1 = " << c.alpha1 << '\n'
     << "alpha2 = " << c.alpha2 << '\n'
     << "sigma_bar1 = " << c.sigma_bar1 << '\n'
     << "excitation_met = " << (c.excitation_met ? "true" : "false") << '\n'
     << "lambda_star_norm = " << c.lambda_star.norm() << '\n'
     << "envelope_steps = " << env.steps << '\n'
     << "envelope_fraction = " << env.fraction << '\n'
     << "envelope_worst_ratio = " << env.worst_ratio << '\n'
     << "kkt_stationarity = " << kkt.stationarity << '\n'
     << "kkt_comp_slack = " << kkt.comp_slack << '\n';
  if (!c.excitation_met) os << "warning = excitation condition unmet; k_cl term dropped from beta1\n";
  os.precision(old);
}

std::string report_csv_header() {
  return "scenario,Lambda_min,Lambda_max,beta1,beta2,sigma_bar1,excitation_met,envelope_fraction,"
         "envelope_worst_ratio,kkt_stationarity,kkt_comp_slack";
}

std::string report_csv_row(const std::string& scenario, const UubConstants& c, const EnvelopeReport& env,
                           const KktResiduals& kkt) {
  std::ostringstream os;
  os.precision(17);
  os << scenario << ',' << c.Lambda_min << ',' << c.Lambda_max << ',' << c.beta1 << ',' << c.beta2 << ','
     << c.sigma_bar1 << ',' << (c.excitation_met ? 1 : 0) << ',' << env.fraction << ',' << env.worst_ratio << ','
     << kkt.stationarity << ',' << kkt.comp_slack;
  return os.str();
}

}  // namespace badapt
