#pragma once

#include <cstddef>
#include <vector>

#include "dmopt/problem.hpp"
#include "dmopt/types.hpp"

namespace dmopt {

/// Per-component tolerance above which a re-evaluated objective vector counts
/// as changed by the environment.
inline constexpr double kChangeTolerance = 1e-12;

struct ArchiveEntry {
  DecisionVector x;
  ObjectiveVector f;
  double eval_time = 0.0;  // time at which f was computed
};

struct ReevalStats {
  int changed = 0;   // entries whose objectives moved beyond kChangeTolerance
  int degraded = 0;  // entries whose refreshed objectives are dominated by the old ones
};

/// Bounded store of mutually non-dominated solutions. Insertion preserves the
/// non-domination invariant and evicts the most crowded region's entry on
/// overflow. Re-evaluation doubles as the environment change detector.
class Archive {
 public:
  explicit Archive(std::size_t capacity = 100);

  /// Rejects candidates dominated by any entry (and exact re-inserts of an
  /// entry already present). Otherwise removes entries the candidate
  /// dominates, appends it, and if the capacity is exceeded evicts the entry
  /// with the smallest crowding distance (ties: lowest index). Returns whether
  /// the candidate was admitted.
  bool insert(ArchiveEntry candidate);

  /// Recomputes every entry's objectives at time t, counts changes and
  /// degradations, then prunes entries left dominated by the refreshed
  /// values. Entry order is preserved.
  ReevalStats reevaluate(const DynamicProblem& problem, double t);

  /// Objective vectors of all entries, in storage order.
  std::vector<ObjectiveVector> pof_image() const;

  const std::vector<ArchiveEntry>& entries() const { return entries_; }

  /// Crowding distances of the current entries (cached between mutations).
  const std::vector<double>& crowding() const;

  std::size_t capacity() const { return capacity_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

 private:
  std::size_t capacity_;
  std::vector<ArchiveEntry> entries_;
  mutable std::vector<double> crowding_cache_;
  mutable bool crowding_valid_ = false;
};

}  // namespace dmopt
