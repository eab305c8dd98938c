#include "dmopt/dominance.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace dmopt {

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("dominates: objective vectors differ in length");
  return (a.array() <= b.array()).all() && (a.array() < b.array()).any();
}

std::vector<std::size_t> non_dominated_set(const std::vector<ObjectiveVector>& points) {
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < points.size() && !dominated; ++j)
      dominated = j != i && dominates(points[j], points[i]);
    if (!dominated) kept.push_back(i);
  }
  return kept;
}

std::vector<double> crowding_distance(const std::vector<ObjectiveVector>& points) {
  if (points.empty()) throw std::invalid_argument("crowding_distance: empty point set");
  const Eigen::Index m = points.front().size();
  for (const ObjectiveVector& p : points)
    if (p.size() != m)
      throw std::invalid_argument("crowding_distance: objective vectors differ in length");

  const std::size_t n = points.size();
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> distance(n, 0.0);
  std::vector<std::size_t> order(n);
  for (Eigen::Index obj = 0; obj < m; ++obj) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return points[a][obj] < points[b][obj];
    });
    distance[order.front()] = inf;
    distance[order.back()] = inf;
    const double range = points[order.back()][obj] - points[order.front()][obj];
    if (range <= 0.0) continue;
    for (std::size_t k = 1; k + 1 < n; ++k)
      distance[order[k]] += (points[order[k + 1]][obj] - points[order[k - 1]][obj]) / range;
  }
  return distance;
}

}  // namespace dmopt
