#include "dmopt/problem.hpp"

#include <stdexcept>
#include <string>

namespace dmopt {

ObjectiveVector evaluate(const DynamicProblem& problem, const DecisionVector& x, double t) {
  if (!problem.evaluator) throw std::invalid_argument("evaluate: problem has no evaluator");
  if (x.size() != problem.dimension)
    throw std::invalid_argument("evaluate: decision vector has length " +
                                std::to_string(x.size()) + " but " + problem.name +
                                " expects " + std::to_string(problem.dimension));
  if ((x.array() < problem.lower_bounds.array()).any() ||
      (x.array() > problem.upper_bounds.array()).any())
    throw std::invalid_argument("evaluate: decision vector violates the bounds of " +
                                problem.name);
  ObjectiveVector f = problem.evaluator(x, t);
  if (f.size() != problem.objectives)
    throw std::logic_error("evaluate: evaluator of " + problem.name +
                           " returned the wrong objective count");
  if (!f.allFinite())
    throw std::logic_error("evaluate: evaluator of " + problem.name +
                           " returned non-finite objectives");
  return f;
}

DynamicProblem freeze(const DynamicProblem& problem, double t0) {
  DynamicProblem frozen = problem;
  frozen.name = problem.name + "-frozen";
  frozen.evaluator = [base = problem.evaluator, t0](const DecisionVector& x, double) {
    return base(x, t0);
  };
  return frozen;
}

}  // namespace dmopt
