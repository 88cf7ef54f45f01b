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

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace badapt {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Positive-definite diagonal gain, stored by its diagonal.
using DiagGain = Eigen::DiagonalMatrix<double, Eigen::Dynamic>;

inline DiagGain diag_gain(const Vec& d) { return DiagGain(d); }

inline DiagGain scaled_identity(Eigen::Index size, double value) {
  return DiagGain(Vec::Constant(size, value));
}

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition of a public operation was not met (dimensions, signs).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// A barrier was evaluated at or outside a constraint boundary.
class InfeasibleEvaluation : public Error {
 public:
  using Error::Error;
};

/// Norm-barrier gradient requested at the origin.
class SingularGradient : public Error {
 public:
  using Error::Error;
};

class InsufficientWindow : public Error {
 public:
  using Error::Error;
};

/// Integration failure carrying the simulation time at which it occurred.
class StepFailure : public Error {
 public:
  StepFailure(const std::string& what, double time)
      : Error(what + " at t=" + std::to_string(time)), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

/// The step-halving budget was exhausted without a feasible step.
class BarrierBreach : public StepFailure {
 public:
  using StepFailure::StepFailure;
};

/// NaN or Inf appeared in the composite state.
class NumericalDivergence : public StepFailure {
 public:
  using StepFailure::StepFailure;
};

/// Scenario configuration problem; `key()` names the offending entry.
class ConfigError : public Error {
 public:
  ConfigError(std::string key, const std::string& what)
      : Error("config key '" + key + "': " + what), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

namespace detail {

inline void require(bool cond, const char* what) {
  if (!cond) throw ContractViolation(what);
}

inline void require_size(Eigen::Index got, Eigen::Index want, const char* what) {
  if (got != want) {
    throw ContractViolation(std::string(what) + ": expected length " + std::to_string(want) +
                            ", got " + std::to_string(got));
  }
}

}  // namespace detail
}  // namespace badapt
