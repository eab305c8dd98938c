#pragma once

#include <vector>

#include "dmopt/types.hpp"

namespace dmopt {

/// Pareto dominance for minimization: a <= b in every component and a < b in
/// at least one. Equal vectors do not dominate each other.
bool dominates(const ObjectiveVector& a, const ObjectiveVector& b);

/// Indices of the points not dominated by any other point, in input order.
/// Duplicate vectors are all retained.
std::vector<std::size_t> non_dominated_set(const std::vector<ObjectiveVector>& points);

/// Crowding distance: per objective, sort and accumulate the neighbour gap
/// normalized by that objective's range. Sorted extremes get +infinity; an
/// objective with zero range contributes nothing.
std::vector<double> crowding_distance(const std::vector<ObjectiveVector>& points);

}  // namespace dmopt
