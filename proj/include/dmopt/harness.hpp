#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "dmopt/metrics.hpp"
#include "dmopt/nsga2.hpp"
#include "dmopt/pso.hpp"
#include "dmopt/trace.hpp"

namespace dmopt {

/// Environment variable that overrides the default output directory.
inline constexpr const char* kOutDirEnvVar = "DMOPT_OUT";

inline constexpr const char* kDynamicMopsoId = "dynamic-mopso";
inline constexpr const char* kOmopsoId = "omopso";
inline constexpr const char* kNsga2Id = "nsga2";

struct ExperimentConfig {
  std::vector<std::string> problems = {"fda1", "dimp2", "dmop3"};
  std::vector<std::string> algorithms = {kDynamicMopsoId, kOmopsoId, kNsga2Id};
  int runs = 30;
  std::uint64_t base_seed = 1;
  std::string out_dir = "results";
  int dimension = 10;
  int workers = 0;  // 0 picks the hardware concurrency
  OptimizerConfig pso;
  Nsga2Config nsga;

  /// Rejects unknown problem/algorithm ids and inconsistent settings before
  /// any run starts.
  void validate() const;
};

/// Flat key=value file ('#' comments). Unknown keys are rejected. Values on
/// the command line take precedence over the file.
void apply_config_file(const std::filesystem::path& path, ExperimentConfig& config);

/// Run seed derived only from (base_seed, algorithm, problem, run): any cell
/// can be reproduced in isolation.
std::uint64_t cell_seed(std::uint64_t base_seed, std::string_view algorithm,
                        std::string_view problem, int run);

/// File stem "problem__algorithm__runNNN" for one grid cell's outputs.
std::string cell_stem(std::string_view problem, std::string_view algorithm, int run);

/// Builds the problem instance and runs the named algorithm.
RunTrace run_cell(const std::string& problem_id, const std::string& algorithm_id,
                  const ExperimentConfig& config, std::uint64_t seed);

struct CellResult {
  std::string problem;
  std::string algorithm;
  int run = 0;
  bool ok = false;
  std::string error;
  MetricReport report;
};

struct Stats {
  double mean = 0.0;
  double median = 0.0;
  double sd = 0.0;  // sample standard deviation, 0 for a single value
  double min = 0.0;
  double max = 0.0;
};

Stats compute_stats(std::vector<double> values);

struct SummaryRow {
  std::string problem;
  std::string algorithm;
  std::string metric;  // "gd", "spread" or "hv"
  Stats stats;
  bool best = false;  // best mean among the algorithms of this (problem, metric)
};

/// Per-(problem, algorithm, metric) statistics over the per-run aggregate
/// means. gd and spread rank best-low, hv best-high. Failed cells are
/// skipped; a (problem, algorithm) pair with no successful run is omitted
/// with a warning on stderr.
std::vector<SummaryRow> summarize(const std::vector<CellResult>& cells);

struct ExperimentResult {
  int exit_code = 0;  // 0 all cells ok, 2 when any cell failed
  std::vector<CellResult> cells;
  std::vector<SummaryRow> summary;
};

/// Runs the problems x algorithms x runs grid on a worker pool and writes,
/// under config.out_dir: reports/ (per-window metric rows), traces/ (window
/// snapshots), fronts/ (final fronts, plottable), hv/ (per-window HV curves),
/// summary.csv, and failures.txt when any cell failed. A failing cell aborts
/// only that cell.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Writes the points of one window snapshot as two-column text sorted by f1.
void emit_front_snapshot(const RunTrace& trace, int window, const std::filesystem::path& path);

/// Rebuilds reports/ from the snapshots stored in traces/. Returns a process
/// exit code.
int recompute_metrics(const std::filesystem::path& out_dir);

/// Rebuilds summary.csv from the per-run CSVs in reports/. Returns a process
/// exit code.
int rebuild_summary(const std::filesystem::path& out_dir);

/// Lossless round-trip formatting used for every number written to disk.
std::string fmt_double(double v);

}  // namespace dmopt
