#include "dmopt/pso.hpp"

#include <stdexcept>
#include <utility>

#include "dmopt/dominance.hpp"

namespace dmopt {

void OptimizerConfig::validate() const {
  if (swarm_size < 1) throw std::invalid_argument("config: swarm_size must be positive");
  if (archive_capacity == 0) throw std::invalid_argument("config: archive_capacity must be positive");
  if (max_iterations < 1) throw std::invalid_argument("config: max_iterations must be positive");
  if (mutation_probability > 1.0)
    throw std::invalid_argument("config: mutation_probability must be <= 1");
  if (c_min > c_max || c_min < 0.0)
    throw std::invalid_argument("config: acceleration range is invalid");
  if (inertia_min > inertia_max || inertia_min < 0.0)
    throw std::invalid_argument("config: inertia range is invalid");
  if (severity < 1) throw std::invalid_argument("config: severity must be >= 1");
  if (frequency < 1) throw std::invalid_argument("config: frequency must be >= 1");
}

double OptimizerConfig::resolved_mutation_probability(int dimension) const {
  if (dimension < 1) throw std::invalid_argument("config: dimension must be positive");
  return mutation_probability < 0.0 ? 1.0 / dimension : mutation_probability;
}

Eigen::VectorXd update_velocity(const Particle& p, const DecisionVector& leader, double w,
                                double c1, double c2, double r1, double r2,
                                const Eigen::VectorXd& vmax) {
  Eigen::VectorXd v = w * p.velocity + c1 * r1 * (p.pbest_x - p.position) +
                      c2 * r2 * (leader - p.position);
  return v.cwiseMin(vmax).cwiseMax(-vmax);
}

void update_position(Particle& p, const Eigen::VectorXd& lower, const Eigen::VectorXd& upper) {
  p.position += p.velocity;
  for (Eigen::Index d = 0; d < p.position.size(); ++d) {
    if (p.position[d] < lower[d]) {
      p.position[d] = lower[d];
      p.velocity[d] = 0.0;
    } else if (p.position[d] > upper[d]) {
      p.position[d] = upper[d];
      p.velocity[d] = 0.0;
    }
  }
}

const ArchiveEntry& leader_tournament(const Archive& archive, std::size_t i, std::size_t j,
                                      Rng& rng) {
  if (i >= archive.size() || j >= archive.size())
    throw std::out_of_range("leader_tournament: entry index out of range");
  const std::vector<double>& crowd = archive.crowding();
  if (crowd[i] > crowd[j]) return archive.entries()[i];
  if (crowd[j] > crowd[i]) return archive.entries()[j];
  return archive.entries()[rng.coin() ? i : j];
}

const ArchiveEntry& select_leader(const Archive& archive, Rng& rng) {
  if (archive.empty())
    throw std::logic_error("select_leader: archive is empty; seed it before selecting leaders");
  const std::size_t i = rng.uniform_index(archive.size());
  const std::size_t j = rng.uniform_index(archive.size());
  if (i == j) return archive.entries()[i];
  return leader_tournament(archive, i, j, rng);
}

DecisionVector mutate(const DecisionVector& x, double prob, Rng& rng,
                      const Eigen::VectorXd& lower, const Eigen::VectorXd& upper) {
  DecisionVector y = x;
  for (Eigen::Index d = 0; d < y.size(); ++d)
    if (rng.uniform() < prob) y[d] = rng.uniform(lower[d], upper[d]);
  return y;
}

void update_pbest(Particle& p, const DecisionVector& x_new, const ObjectiveVector& f_new,
                  Rng& rng) {
  if (dominates(f_new, p.pbest_f)) {
    p.pbest_x = x_new;
    p.pbest_f = f_new;
    return;
  }
  if (dominates(p.pbest_f, f_new)) return;
  if (rng.coin()) {
    p.pbest_x = x_new;
    p.pbest_f = f_new;
  }
}

std::pair<bool, int> detect_change(SwarmState& state, const DynamicProblem& problem) {
  const ReevalStats stats = state.archive.reevaluate(problem, compute_time(state.ctx));
  return {stats.changed > 0, stats.degraded};
}

void respond_change(SwarmState& state, const DynamicProblem& problem) {
  const double t = compute_time(state.ctx);
  for (Particle& p : state.particles) {
    const ObjectiveVector fresh = evaluate(problem, p.position, t);
    if (dominates(p.current_f, fresh)) {
      for (int d = 0; d < problem.dimension; ++d)
        p.position[d] = state.rng.uniform(problem.lower_bounds[d], problem.upper_bounds[d]);
      p.velocity.setZero();
      p.current_f = evaluate(problem, p.position, t);
      p.pbest_x = p.position;
      p.pbest_f = p.current_f;
    } else {
      p.current_f = fresh;
      p.pbest_f = evaluate(problem, p.pbest_x, t);
    }
  }
}

namespace {

RunTrace run_swarm(const DynamicProblem& problem, const OptimizerConfig& cfg,
                   bool handle_changes) {
  cfg.validate();
  if (problem.dimension < 1)
    throw std::invalid_argument("run: problem dimension must be positive");
  const Eigen::VectorXd& lower = problem.lower_bounds;
  const Eigen::VectorXd& upper = problem.upper_bounds;
  const Eigen::VectorXd vmax = 0.5 * (upper - lower);
  const double mutation_prob = cfg.resolved_mutation_probability(problem.dimension);

  SwarmState state{{},
                   Archive(cfg.archive_capacity),
                   TimeContext{cfg.severity, cfg.frequency, 0},
                   Rng(cfg.seed)};
  double t = compute_time(state.ctx);

  state.particles.resize(cfg.swarm_size);
  for (Particle& p : state.particles) {
    p.position.resize(problem.dimension);
    for (int d = 0; d < problem.dimension; ++d)
      p.position[d] = state.rng.uniform(lower[d], upper[d]);
    p.velocity = Eigen::VectorXd::Zero(problem.dimension);
    p.current_f = evaluate(problem, p.position, t);
    p.pbest_x = p.position;
    p.pbest_f = p.current_f;
  }
  for (const Particle& p : state.particles)
    state.archive.insert({p.position, p.current_f, t});

  RunTrace trace;
  trace.iterations.reserve(cfg.max_iterations);
  for (long long tau = 1; tau <= cfg.max_iterations; ++tau) {
    state.ctx.iteration = tau;
    IterationRecord record;
    record.tau = tau;

    if (tau % cfg.frequency == 0) {
      // The window that just finished, captured before anything reacts to
      // the new environment.
      const int window = static_cast<int>(tau / cfg.frequency) - 1;
      trace.windows.push_back({window, t, state.archive.pof_image()});
      if (handle_changes) {
        ++trace.detect_calls;
        const auto [changed, degraded] = detect_change(state, problem);
        record.changed = changed;
        record.degraded = degraded;
        if (changed) respond_change(state, problem);
      }
    }
    t = compute_time(state.ctx);
    record.t = t;

    const double w = state.rng.uniform(cfg.inertia_min, cfg.inertia_max);
    const double c1 = state.rng.uniform(cfg.c_min, cfg.c_max);
    const double c2 = state.rng.uniform(cfg.c_min, cfg.c_max);
    for (Particle& p : state.particles) {
      const DecisionVector leader = select_leader(state.archive, state.rng).x;
      const double r1 = state.rng.uniform();
      const double r2 = state.rng.uniform();
      p.velocity = update_velocity(p, leader, w, c1, c2, r1, r2, vmax);
      update_position(p, lower, upper);
      p.position = mutate(p.position, mutation_prob, state.rng, lower, upper);
      p.current_f = evaluate(problem, p.position, t);
      update_pbest(p, p.position, p.current_f, state.rng);
      state.archive.insert({p.position, p.current_f, t});
    }
    trace.iterations.push_back(record);
  }

  trace.final_solutions = state.archive.entries();
  trace.final_time = t;
  return trace;
}

}  // namespace

RunTrace run_dynamic_mopso(const DynamicProblem& problem, const OptimizerConfig& config) {
  return run_swarm(problem, config, true);
}

RunTrace run_omopso(const DynamicProblem& problem, const OptimizerConfig& config) {
  return run_swarm(problem, config, false);
}

}  // namespace dmopt
