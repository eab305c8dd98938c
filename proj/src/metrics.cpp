#include "dmopt/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace dmopt {

ObjectiveVector hv_reference_point() {
  ObjectiveVector ref(2);
  ref << kHvReferenceCoordinate, kHvReferenceCoordinate;
  return ref;
}

double gd(const std::vector<ObjectiveVector>& approx,
          const std::vector<ObjectiveVector>& reference) {
  if (approx.empty()) throw std::invalid_argument("gd: empty approximation front");
  if (reference.empty()) throw std::invalid_argument("gd: empty reference front");
  double sum = 0.0;
  for (const ObjectiveVector& a : approx) {
    double best = std::numeric_limits<double>::infinity();
    for (const ObjectiveVector& r : reference)
      best = std::min(best, (a - r).squaredNorm());
    sum += best;
  }
  return std::sqrt(sum / static_cast<double>(approx.size()));
}

double spread(const std::vector<ObjectiveVector>& front) {
  if (front.size() < 2)
    throw std::invalid_argument("spread: needs at least two points");
  std::vector<ObjectiveVector> sorted = front;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const ObjectiveVector& a, const ObjectiveVector& b) { return a[0] < b[0]; });
  std::vector<double> gaps(sorted.size() - 1);
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i)
    gaps[i] = (sorted[i + 1] - sorted[i]).norm();
  double mean = 0.0;
  for (double gap : gaps) mean += gap;
  mean /= static_cast<double>(gaps.size());
  double deviation = 0.0;
  for (double gap : gaps) deviation += std::abs(gap - mean);
  return deviation / static_cast<double>(gaps.size());
}

double hypervolume(const std::vector<ObjectiveVector>& front,
                   const ObjectiveVector& reference_point) {
  if (reference_point.size() != 2)
    throw std::invalid_argument("hypervolume: only bi-objective fronts are supported");
  if (!reference_point.allFinite())
    throw std::invalid_argument("hypervolume: reference point must be finite");
  if ((reference_point.array() <= 0.0).any())
    throw std::invalid_argument("hypervolume: degenerate reference point");
  const double ref0 = reference_point[0];
  const double ref1 = reference_point[1];

  std::vector<std::pair<double, double>> pts;
  pts.reserve(front.size());
  for (const ObjectiveVector& f : front) {
    if (f.size() != 2)
      throw std::invalid_argument("hypervolume: only bi-objective fronts are supported");
    if (f[0] < ref0 && f[1] < ref1) pts.emplace_back(f[0], f[1]);
  }
  if (pts.empty()) return 0.0;

  // Sweep left to right; each point contributes the strip between its own f1
  // and the reference, from the previous accepted f2 down to its own.
  std::sort(pts.begin(), pts.end());
  double hv = 0.0;
  double prev_f1 = ref1;
  for (const auto& [x, y] : pts) {
    if (y >= prev_f1) continue;  // dominated by an accepted point (or duplicate)
    hv += (ref0 - x) * (prev_f1 - y);
    prev_f1 = y;
  }
  return hv;
}

MetricRow score_snapshot(int window, double t, const std::vector<ObjectiveVector>& objectives,
                         const BenchmarkSpec& spec) {
  MetricRow row;
  row.window = window;
  row.t = t;
  const std::vector<ObjectiveVector> reference = true_pof(spec, t, kTruePofResolution);
  row.gd = gd(objectives, reference);
  row.spread = objectives.size() < 2 ? 0.0 : spread(objectives);
  row.hv = hypervolume(objectives, hv_reference_point());
  return row;
}

MetricReport report(const RunTrace& trace, const BenchmarkSpec& spec) {
  if (trace.windows.empty())
    throw std::invalid_argument("report: trace has no window snapshots");
  MetricReport rep;
  rep.rows.reserve(trace.windows.size());
  for (const WindowSnapshot& snap : trace.windows)
    rep.rows.push_back(score_snapshot(snap.window, snap.t, snap.objectives, spec));
  for (const MetricRow& row : rep.rows) {
    rep.mean_gd += row.gd;
    rep.mean_spread += row.spread;
    rep.mean_hv += row.hv;
  }
  const double n = static_cast<double>(rep.rows.size());
  rep.mean_gd /= n;
  rep.mean_spread /= n;
  rep.mean_hv /= n;
  return rep;
}

}  // namespace dmopt
