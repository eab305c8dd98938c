#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "dmopt/problem.hpp"
#include "dmopt/rng.hpp"
#include "dmopt/trace.hpp"
#include "dmopt/types.hpp"

namespace dmopt {

/// Generational NSGA-II under a fixed evaluation budget. Time advances with
/// the evaluation counter so that the budget spans the same environment
/// windows as a swarm run with `max_iterations` / `frequency` windows.
struct Nsga2Config {
  int population_size = 100;
  long long evaluation_budget = 25000;
  double crossover_probability = 0.9;
  double crossover_eta = 20.0;
  double mutation_eta = 20.0;
  double mutation_probability = -1.0;  // negative selects the 1/dimension default
  int severity = 10;
  int frequency = 10;
  int max_iterations = 200;  // window layout reference, not a generation count
  std::uint64_t seed = 0;

  void validate() const;
};

/// Fronts of mutually non-dominated indices, best first. Indices within a
/// front are ascending.
std::vector<std::vector<std::size_t>> fast_non_dominated_sort(
    const std::vector<ObjectiveVector>& points);

/// Simulated-binary blend of two parent components with spread factor beta:
/// beta = 1 reproduces the parents.
std::pair<double, double> sbx_pair(double y1, double y2, double beta);

/// Polynomial-mutation offset as a fraction of the variable range; u = 0.5
/// yields exactly 0. delta1/delta2 are the normalized distances to the lower
/// and upper bound.
double polynomial_delta(double u, double delta1, double delta2, double eta);

RunTrace run_nsga2(const DynamicProblem& problem, const Nsga2Config& config);

}  // namespace dmopt
