#pragma once

#include <Eigen/Core>

#include <stdexcept>

namespace dmopt {

using DecisionVector = Eigen::VectorXd;
using ObjectiveVector = Eigen::VectorXd;

/// Discrete environment clock. The environment index advances every
/// `frequency` iterations; problems see the continuous time
/// t = floor(iteration / frequency) / severity.
struct TimeContext {
  int severity = 10;        // n_t, reciprocal of the step t advances per window
  int frequency = 10;       // tau_t, iterations per environment window
  long long iteration = 0;  // tau, current iteration counter

  [[nodiscard]] long long environment() const {
    if (frequency < 1) throw std::invalid_argument("TimeContext: frequency must be >= 1");
    if (iteration < 0) throw std::invalid_argument("TimeContext: iteration must be >= 0");
    return iteration / frequency;
  }
};

/// t = (1/severity) * floor(iteration / frequency). The floor is taken with
/// integer arithmetic so window boundaries are exact.
inline double compute_time(const TimeContext& ctx) {
  if (ctx.severity < 1) throw std::invalid_argument("compute_time: severity must be >= 1");
  return static_cast<double>(ctx.environment()) / static_cast<double>(ctx.severity);
}

}  // namespace dmopt
