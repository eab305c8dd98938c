#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "dmopt/archive.hpp"
#include "dmopt/problem.hpp"
#include "dmopt/rng.hpp"
#include "dmopt/trace.hpp"
#include "dmopt/types.hpp"

namespace dmopt {

struct Particle {
  DecisionVector position;
  Eigen::VectorXd velocity;
  ObjectiveVector current_f;  // objectives of `position` at its last evaluation
  DecisionVector pbest_x;
  ObjectiveVector pbest_f;
};

/// Parameters shared by the two particle-swarm optimizers. Inertia and the
/// acceleration coefficients are redrawn uniformly once per iteration and
/// shared by the whole swarm.
struct OptimizerConfig {
  int swarm_size = 200;
  std::size_t archive_capacity = 100;
  int max_iterations = 200;
  double mutation_probability = -1.0;  // negative selects the 1/dimension default
  double c_min = 1.5;
  double c_max = 2.0;
  double inertia_min = 0.1;
  double inertia_max = 0.5;
  int severity = 10;   // n_t
  int frequency = 10;  // tau_t, iterations per environment window
  std::uint64_t seed = 0;

  void validate() const;
  double resolved_mutation_probability(int dimension) const;
};

struct SwarmState {
  std::vector<Particle> particles;
  Archive archive;
  TimeContext ctx;
  Rng rng;
};

/// w*v + c1*r1*(pbest - x) + c2*r2*(leader - x), clamped per component to
/// [-vmax, vmax].
Eigen::VectorXd update_velocity(const Particle& p, const DecisionVector& leader, double w,
                                double c1, double c2, double r1, double r2,
                                const Eigen::VectorXd& vmax);

/// x += v componentwise, clamping to the box and zeroing the velocity of any
/// clamped component.
void update_position(Particle& p, const Eigen::VectorXd& lower, const Eigen::VectorXd& upper);

/// Winner of a crowding-distance tournament between entries i and j; exact
/// ties are broken by a fair coin.
const ArchiveEntry& leader_tournament(const Archive& archive, std::size_t i, std::size_t j,
                                      Rng& rng);

/// Binary tournament over two uniformly drawn entries (with replacement).
/// Throws if the archive is empty: seed it before selecting leaders.
const ArchiveEntry& select_leader(const Archive& archive, Rng& rng);

/// Copy of x where each component is resampled uniformly within its bounds
/// with probability `prob`.
DecisionVector mutate(const DecisionVector& x, double prob, Rng& rng,
                      const Eigen::VectorXd& lower, const Eigen::VectorXd& upper);

/// Dominance-based personal-best update; an incomparable candidate replaces
/// the personal best with probability 1/2.
void update_pbest(Particle& p, const DecisionVector& x_new, const ObjectiveVector& f_new,
                  Rng& rng);

/// Re-evaluates the archive at the time of state.ctx. Returns {whether any
/// entry moved beyond tolerance, how many entries degraded}. Consumes no
/// randomness.
std::pair<bool, int> detect_change(SwarmState& state, const DynamicProblem& problem);

/// Re-evaluates every particle at the current time; particles whose old
/// objectives dominate the fresh ones are re-initialized uniformly (zero
/// velocity, personal best reset), survivors keep their position and get
/// their personal best re-evaluated.
void respond_change(SwarmState& state, const DynamicProblem& problem);

/// Archive-guided swarm with change detection and response at every window
/// boundary.
RunTrace run_dynamic_mopso(const DynamicProblem& problem, const OptimizerConfig& config);

/// Identical loop without detection or response; archive and personal bests
/// go stale when the environment moves. Serves as the unaware baseline.
RunTrace run_omopso(const DynamicProblem& problem, const OptimizerConfig& config);

}  // namespace dmopt
