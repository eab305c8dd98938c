#pragma once

#include <vector>

#include "dmopt/archive.hpp"
#include "dmopt/types.hpp"

namespace dmopt {

struct IterationRecord {
  long long tau = 0;
  double t = 0.0;
  bool changed = false;  // the change detector fired on this iteration
  int degraded = 0;      // archive entries the change degraded
};

/// Archive (or elite front) state captured when an environment window ends,
/// before any reaction to the new environment.
struct WindowSnapshot {
  int window = 0;
  double t = 0.0;
  std::vector<ObjectiveVector> objectives;
};

struct RunTrace {
  std::vector<IterationRecord> iterations;
  std::vector<WindowSnapshot> windows;
  std::vector<ArchiveEntry> final_solutions;
  double final_time = 0.0;
  long long detect_calls = 0;
};

}  // namespace dmopt
