#include "dmopt/archive.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "dmopt/dominance.hpp"

namespace dmopt {

Archive::Archive(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw std::invalid_argument("Archive: capacity must be positive");
}

bool Archive::insert(ArchiveEntry candidate) {
  for (const ArchiveEntry& e : entries_) {
    if (dominates(e.f, candidate.f)) return false;
    if (e.f == candidate.f && e.x == candidate.x) return false;  // exact re-insert
  }
  std::erase_if(entries_, [&](const ArchiveEntry& e) { return dominates(candidate.f, e.f); });
  entries_.push_back(std::move(candidate));
  if (entries_.size() > capacity_) {
    const std::vector<double> crowd = crowding_distance(pof_image());
    const auto evict = std::min_element(crowd.begin(), crowd.end()) - crowd.begin();
    entries_.erase(entries_.begin() + evict);
  }
  crowding_valid_ = false;
  return true;
}

ReevalStats Archive::reevaluate(const DynamicProblem& problem, double t) {
  ReevalStats stats;
  for (ArchiveEntry& e : entries_) {
    ObjectiveVector fresh = evaluate(problem, e.x, t);
    if (((fresh - e.f).array().abs() > kChangeTolerance).any()) ++stats.changed;
    if (dominates(e.f, fresh)) ++stats.degraded;
    e.f = std::move(fresh);
    e.eval_time = t;
  }
  if (!entries_.empty()) {
    const std::vector<std::size_t> keep = non_dominated_set(pof_image());
    if (keep.size() != entries_.size()) {
      std::vector<ArchiveEntry> pruned;
      pruned.reserve(keep.size());
      for (std::size_t idx : keep) pruned.push_back(std::move(entries_[idx]));
      entries_ = std::move(pruned);
    }
  }
  crowding_valid_ = false;
  return stats;
}

std::vector<ObjectiveVector> Archive::pof_image() const {
  std::vector<ObjectiveVector> image;
  image.reserve(entries_.size());
  for (const ArchiveEntry& e : entries_) image.push_back(e.f);
  return image;
}

const std::vector<double>& Archive::crowding() const {
  if (!crowding_valid_) {
    crowding_cache_ =
        entries_.empty() ? std::vector<double>{} : crowding_distance(pof_image());
    crowding_valid_ = true;
  }
  return crowding_cache_;
}

}  // namespace dmopt
