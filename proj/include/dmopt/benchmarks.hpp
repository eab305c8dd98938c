#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dmopt/problem.hpp"
#include "dmopt/types.hpp"

namespace dmopt {

enum class BenchmarkId { Fda1, Dimp2, Dmop3 };

/// Accepts "fda1", "dimp2", "dmop3"; anything else throws.
BenchmarkId parse_benchmark_id(const std::string& id);
std::string to_string(BenchmarkId id);

struct BenchmarkSpec {
  BenchmarkId id = BenchmarkId::Fda1;
  int dimension = 10;
};

Eigen::VectorXd benchmark_lower_bounds(const BenchmarkSpec& spec);
Eigen::VectorXd benchmark_upper_bounds(const BenchmarkSpec& spec);

/// All three problems share the two-objective template
///   f1 = x_pos,   f2 = g * (1 - sqrt(f1 / g)),
/// where g >= 1 depends on the remaining variables and on time. Substituting
/// g = 1 gives f2 = 1 - sqrt(f1): the Pareto front is stationary while the
/// optimal decision variables track a moving target, so the problems are
/// dynamic in decision space only.

/// FDA1. x1 in [0,1] is the position variable, x2..xn in [-1,1].
///   G(t) = sin(pi t / 2)
///   g = 1 + sum_{i>=2} (x_i - G(t))^2
/// The optimum holds every non-position variable at G(t).
ObjectiveVector fda1_evaluate(const DecisionVector& x, double t);
double fda1_g(double t);

/// DIMP2. x1 in [0,1], x2..xn in [-2,2]. Each variable chases its own target
///   G_i(t) = sin(pi t / 2 + 2 pi i / (n + 1))^2,  i = 2..n (1-based),
/// through the multimodal term
///   g = 1 + 2 (n - 1) + sum_{i>=2} [ (x_i - G_i(t))^2 - 2 cos(3 pi (x_i - G_i(t))) ].
/// At x_i = G_i(t) each bracket is -2, cancelling the 2 (n - 1) offset, so the
/// minimum of g is again exactly 1.
ObjectiveVector dimp2_evaluate(const DecisionVector& x, double t);

/// G_i(t) for the 0-based variable index `var_index` (valid: 1 <= var_index
/// < dimension, i.e. every variable except the position variable x1).
double dimp2_g(double t, int var_index, int dimension);

/// dMOP3. All variables in [0,1]. The position variable is not fixed: f1 reads
/// the variable at `position_index` (0-based) and the remaining variables
/// chase G(t) = sin(pi t / 2) through g = 1 + sum_{i != pos} (x_i - G(t))^2.
ObjectiveVector dmop3_evaluate(const DecisionVector& x, double t, int position_index);

/// Deterministic draw of dMOP3's position variable for one environment:
/// uniform over [0, dimension) as a hash of (seed, environment).
int dmop3_position_index(std::uint64_t seed, long long environment, int dimension);

/// `resolution` evenly spaced samples (f1, 1 - sqrt(f1)), f1 in [0,1], of the
/// true Pareto front. The front is the same for all three problems and all t.
std::vector<ObjectiveVector> true_pof(const BenchmarkSpec& spec, double t, int resolution);

/// Problem instance with the spec's bounds and evaluator. `seed` and
/// `severity` only matter for dMOP3, where they fix the per-environment
/// position-variable schedule (environment = round(t * severity)).
DynamicProblem make_problem(const BenchmarkSpec& spec, std::uint64_t seed = 0, int severity = 10);

}  // namespace dmopt
