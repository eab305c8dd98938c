#pragma once

#include <functional>
#include <string>

#include "dmopt/types.hpp"

namespace dmopt {

/// Box-constrained minimization problem whose objectives depend on time.
/// The evaluator must be pure: equal (x, t) always produce equal output.
struct DynamicProblem {
  std::string name;
  int dimension = 0;
  int objectives = 2;
  Eigen::VectorXd lower_bounds;
  Eigen::VectorXd upper_bounds;
  std::function<ObjectiveVector(const DecisionVector&, double)> evaluator;
};

/// Evaluates `problem` at (x, t) after checking the dimension and box bounds.
ObjectiveVector evaluate(const DynamicProblem& problem, const DecisionVector& x, double t);

/// Copy of `problem` whose evaluator ignores the passed time and always
/// evaluates at t0. Useful as a time-invariant control.
DynamicProblem freeze(const DynamicProblem& problem, double t0);

}  // namespace dmopt
