#pragma once

#include <vector>

#include "dmopt/benchmarks.hpp"
#include "dmopt/trace.hpp"
#include "dmopt/types.hpp"

namespace dmopt {

/// Points the per-window hypervolume is measured against: (1.1, 1.1) encloses
/// the shared front f2 = 1 - sqrt(f1) with a margin on both objectives.
inline constexpr double kHvReferenceCoordinate = 1.1;
inline constexpr int kTruePofResolution = 500;

ObjectiveVector hv_reference_point();

/// Generational distance: sqrt(mean of squared nearest-reference distances)
/// over the approximation points.
double gd(const std::vector<ObjectiveVector>& approx,
          const std::vector<ObjectiveVector>& reference);

/// Deviation of consecutive distances along the front (sorted by the first
/// objective): mean absolute difference from the mean gap. 0 means evenly
/// spread. Needs at least two points.
double spread(const std::vector<ObjectiveVector>& front);

/// Bi-objective hypervolume dominated by `front` inside the box bounded by
/// `reference_point`. Points not strictly inside the box contribute 0.
/// Objectives in this toolkit are non-negative, so a reference with any
/// component <= 0 cannot enclose volume and is rejected as degenerate.
double hypervolume(const std::vector<ObjectiveVector>& front,
                   const ObjectiveVector& reference_point);

struct MetricRow {
  int window = 0;
  double t = 0.0;
  double gd = 0.0;
  double spread = 0.0;
  double hv = 0.0;
};

struct MetricReport {
  std::vector<MetricRow> rows;
  double mean_gd = 0.0;
  double mean_spread = 0.0;
  double mean_hv = 0.0;
};

/// One metric row per window snapshot, each scored against the true front
/// sampled at that window's time, plus per-run means. A snapshot with a
/// single point gets spread 0 (it has no consecutive gaps).
MetricReport report(const RunTrace& trace, const BenchmarkSpec& spec);

/// Row for one snapshot; shared by report() and the CSV recompute path.
MetricRow score_snapshot(int window, double t, const std::vector<ObjectiveVector>& objectives,
                         const BenchmarkSpec& spec);

}  // namespace dmopt
