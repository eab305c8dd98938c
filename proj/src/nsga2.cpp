#include "dmopt/nsga2.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "dmopt/dominance.hpp"

namespace dmopt {

void Nsga2Config::validate() const {
  if (population_size < 2 || population_size % 2 != 0)
    throw std::invalid_argument("nsga2: population_size must be even and >= 2");
  if (evaluation_budget < population_size)
    throw std::invalid_argument("nsga2: evaluation_budget must cover the initial population");
  if (crossover_probability < 0.0 || crossover_probability > 1.0)
    throw std::invalid_argument("nsga2: crossover_probability must be in [0,1]");
  if (crossover_eta <= 0.0 || mutation_eta <= 0.0)
    throw std::invalid_argument("nsga2: distribution indices must be positive");
  if (mutation_probability > 1.0)
    throw std::invalid_argument("nsga2: mutation_probability must be <= 1");
  if (severity < 1) throw std::invalid_argument("nsga2: severity must be >= 1");
  if (frequency < 1) throw std::invalid_argument("nsga2: frequency must be >= 1");
  if (max_iterations < frequency)
    throw std::invalid_argument("nsga2: max_iterations must cover at least one window");
}

std::vector<std::vector<std::size_t>> fast_non_dominated_sort(
    const std::vector<ObjectiveVector>& points) {
  const std::size_t n = points.size();
  std::vector<std::vector<std::size_t>> fronts;
  if (n == 0) return fronts;

  std::vector<int> domination_count(n, 0);
  std::vector<std::vector<std::size_t>> dominated(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (dominates(points[i], points[j])) {
        dominated[i].push_back(j);
        ++domination_count[j];
      } else if (dominates(points[j], points[i])) {
        dominated[j].push_back(i);
        ++domination_count[i];
      }
    }
  }

  std::vector<std::size_t> current;
  for (std::size_t i = 0; i < n; ++i)
    if (domination_count[i] == 0) current.push_back(i);
  while (!current.empty()) {
    std::vector<std::size_t> next;
    for (std::size_t i : current)
      for (std::size_t j : dominated[i])
        if (--domination_count[j] == 0) next.push_back(j);
    std::sort(next.begin(), next.end());
    fronts.push_back(std::move(current));
    current = std::move(next);
  }
  return fronts;
}

std::pair<double, double> sbx_pair(double y1, double y2, double beta) {
  const double c1 = 0.5 * ((y1 + y2) - beta * (y2 - y1));
  const double c2 = 0.5 * ((y1 + y2) + beta * (y2 - y1));
  return {c1, c2};
}

double polynomial_delta(double u, double delta1, double delta2, double eta) {
  if (u < 0.5) {
    const double xy = 1.0 - delta1;
    const double val = 2.0 * u + (1.0 - 2.0 * u) * std::pow(xy, eta + 1.0);
    return std::pow(val, 1.0 / (eta + 1.0)) - 1.0;
  }
  const double xy = 1.0 - delta2;
  const double val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * std::pow(xy, eta + 1.0);
  return 1.0 - std::pow(val, 1.0 / (eta + 1.0));
}

namespace {

double sbx_betaq(double u, double alpha, double eta) {
  if (u <= 1.0 / alpha) return std::pow(u * alpha, 1.0 / (eta + 1.0));
  return std::pow(1.0 / (2.0 - u * alpha), 1.0 / (eta + 1.0));
}

/// Bounded simulated binary crossover, variable-wise with probability 1/2.
void sbx_crossover(Eigen::VectorXd& a, Eigen::VectorXd& b, const Eigen::VectorXd& lower,
                   const Eigen::VectorXd& upper, double eta, Rng& rng) {
  for (Eigen::Index d = 0; d < a.size(); ++d) {
    if (rng.uniform() > 0.5) continue;
    double y1 = a[d];
    double y2 = b[d];
    if (std::abs(y1 - y2) < 1e-14) continue;
    if (y1 > y2) std::swap(y1, y2);
    const double yl = lower[d];
    const double yu = upper[d];
    const double u = rng.uniform();

    double beta = 1.0 + 2.0 * (y1 - yl) / (y2 - y1);
    double betaq = sbx_betaq(u, 2.0 - std::pow(beta, -(eta + 1.0)), eta);
    double c1 = sbx_pair(y1, y2, betaq).first;

    beta = 1.0 + 2.0 * (yu - y2) / (y2 - y1);
    betaq = sbx_betaq(u, 2.0 - std::pow(beta, -(eta + 1.0)), eta);
    double c2 = sbx_pair(y1, y2, betaq).second;

    c1 = std::clamp(c1, yl, yu);
    c2 = std::clamp(c2, yl, yu);
    if (rng.coin()) std::swap(c1, c2);
    a[d] = c1;
    b[d] = c2;
  }
}

void polynomial_mutation(Eigen::VectorXd& x, const Eigen::VectorXd& lower,
                         const Eigen::VectorXd& upper, double prob, double eta, Rng& rng) {
  for (Eigen::Index d = 0; d < x.size(); ++d) {
    if (rng.uniform() >= prob) continue;
    const double yl = lower[d];
    const double yu = upper[d];
    if (yu <= yl) continue;
    const double y = x[d];
    const double u = rng.uniform();
    const double dq =
        polynomial_delta(u, (y - yl) / (yu - yl), (yu - y) / (yu - yl), eta);
    x[d] = std::clamp(y + dq * (yu - yl), yl, yu);
  }
}

struct Individual {
  DecisionVector x;
  ObjectiveVector f;
  double eval_t = 0.0;
};

std::vector<ObjectiveVector> objectives_of(const std::vector<Individual>& pop) {
  std::vector<ObjectiveVector> objs;
  objs.reserve(pop.size());
  for (const Individual& ind : pop) objs.push_back(ind.f);
  return objs;
}

std::size_t crowded_tournament(std::size_t i, std::size_t j, const std::vector<int>& rank,
                               const std::vector<double>& crowd, Rng& rng) {
  if (rank[i] != rank[j]) return rank[i] < rank[j] ? i : j;
  if (crowd[i] != crowd[j]) return crowd[i] > crowd[j] ? i : j;
  return rng.coin() ? i : j;
}

}  // namespace

RunTrace run_nsga2(const DynamicProblem& problem, const Nsga2Config& cfg) {
  cfg.validate();
  if (problem.dimension < 1)
    throw std::invalid_argument("run: problem dimension must be positive");
  const Eigen::VectorXd& lower = problem.lower_bounds;
  const Eigen::VectorXd& upper = problem.upper_bounds;
  const double mutation_prob = cfg.mutation_probability < 0.0
                                   ? 1.0 / problem.dimension
                                   : cfg.mutation_probability;
  Rng rng(cfg.seed);

  // The evaluation budget spans the same windows as a swarm run: time steps
  // once every budget/windows evaluations.
  const long long windows = cfg.max_iterations / cfg.frequency;
  const long long evals_per_window = cfg.evaluation_budget / windows;
  if (evals_per_window < 1)
    throw std::invalid_argument("nsga2: evaluation budget too small for the window layout");

  long long evals = 0;
  const auto time_of_next_eval = [&]() {
    const long long w = std::min(evals / evals_per_window, windows - 1);
    return static_cast<double>(w) / cfg.severity;
  };
  const auto eval_individual = [&](Individual& ind) {
    ind.eval_t = time_of_next_eval();
    ind.f = evaluate(problem, ind.x, ind.eval_t);
    ++evals;
  };

  std::vector<Individual> pop(cfg.population_size);
  for (Individual& ind : pop) {
    ind.x.resize(problem.dimension);
    for (int d = 0; d < problem.dimension; ++d)
      ind.x[d] = rng.uniform(lower[d], upper[d]);
    eval_individual(ind);
  }

  RunTrace trace;
  long long next_window = 0;
  const auto emit_completed_windows = [&](bool flush_remaining) {
    const long long completed =
        flush_remaining ? windows : std::min(evals / evals_per_window, windows);
    while (next_window < completed) {
      const auto fronts = fast_non_dominated_sort(objectives_of(pop));
      WindowSnapshot snap;
      snap.window = static_cast<int>(next_window);
      snap.t = static_cast<double>(next_window) / cfg.severity;
      for (std::size_t idx : fronts.front()) snap.objectives.push_back(pop[idx].f);
      trace.windows.push_back(std::move(snap));
      ++next_window;
    }
  };
  emit_completed_windows(false);

  long long generation = 0;
  while (evals + cfg.population_size <= cfg.evaluation_budget) {
    const std::vector<ObjectiveVector> objs = objectives_of(pop);
    const auto fronts = fast_non_dominated_sort(objs);
    std::vector<int> rank(pop.size(), 0);
    std::vector<double> crowd(pop.size(), 0.0);
    for (std::size_t fi = 0; fi < fronts.size(); ++fi) {
      std::vector<ObjectiveVector> front_objs;
      front_objs.reserve(fronts[fi].size());
      for (std::size_t idx : fronts[fi]) front_objs.push_back(objs[idx]);
      const std::vector<double> front_crowd = crowding_distance(front_objs);
      for (std::size_t k = 0; k < fronts[fi].size(); ++k) {
        rank[fronts[fi][k]] = static_cast<int>(fi);
        crowd[fronts[fi][k]] = front_crowd[k];
      }
    }

    std::vector<Individual> offspring;
    offspring.reserve(cfg.population_size);
    for (int k = 0; k < cfg.population_size; k += 2) {
      const std::size_t p1 = crowded_tournament(rng.uniform_index(pop.size()),
                                                rng.uniform_index(pop.size()), rank, crowd, rng);
      const std::size_t p2 = crowded_tournament(rng.uniform_index(pop.size()),
                                                rng.uniform_index(pop.size()), rank, crowd, rng);
      Individual a{pop[p1].x, {}, 0.0};
      Individual b{pop[p2].x, {}, 0.0};
      if (rng.uniform() <= cfg.crossover_probability)
        sbx_crossover(a.x, b.x, lower, upper, cfg.crossover_eta, rng);
      polynomial_mutation(a.x, lower, upper, mutation_prob, cfg.mutation_eta, rng);
      polynomial_mutation(b.x, lower, upper, mutation_prob, cfg.mutation_eta, rng);
      eval_individual(a);
      eval_individual(b);
      offspring.push_back(std::move(a));
      offspring.push_back(std::move(b));
    }

    std::vector<Individual> combined = std::move(pop);
    combined.insert(combined.end(), std::make_move_iterator(offspring.begin()),
                    std::make_move_iterator(offspring.end()));
    const std::vector<ObjectiveVector> combined_objs = objectives_of(combined);
    const auto combined_fronts = fast_non_dominated_sort(combined_objs);

    pop.clear();
    pop.reserve(cfg.population_size);
    for (const std::vector<std::size_t>& front : combined_fronts) {
      if (pop.size() == static_cast<std::size_t>(cfg.population_size)) break;
      if (pop.size() + front.size() <= static_cast<std::size_t>(cfg.population_size)) {
        for (std::size_t idx : front) pop.push_back(combined[idx]);
        continue;
      }
      std::vector<ObjectiveVector> front_objs;
      front_objs.reserve(front.size());
      for (std::size_t idx : front) front_objs.push_back(combined_objs[idx]);
      const std::vector<double> front_crowd = crowding_distance(front_objs);
      std::vector<std::size_t> order(front.size());
      for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return front_crowd[a] > front_crowd[b];
      });
      for (std::size_t k = 0; pop.size() < static_cast<std::size_t>(cfg.population_size); ++k)
        pop.push_back(combined[front[order[k]]]);
    }

    ++generation;
    IterationRecord record;
    record.tau = generation;
    record.t = static_cast<double>(std::min((evals - 1) / evals_per_window, windows - 1)) /
               cfg.severity;
    trace.iterations.push_back(record);
    emit_completed_windows(false);
  }
  emit_completed_windows(true);

  const auto final_fronts = fast_non_dominated_sort(objectives_of(pop));
  for (std::size_t idx : final_fronts.front())
    trace.final_solutions.push_back({pop[idx].x, pop[idx].f, pop[idx].eval_t});
  trace.final_time =
      static_cast<double>(std::min((evals - 1) / evals_per_window, windows - 1)) / cfg.severity;
  return trace;
}

}  // namespace dmopt
