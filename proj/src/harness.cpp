#include "dmopt/harness.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <stdexcept>
#include <system_error>
#include <thread>

#include "dmopt/benchmarks.hpp"

namespace dmopt {

namespace fs = std::filesystem;

std::string fmt_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  if (res.ec != std::errc())
    throw std::runtime_error("fmt_double: formatting failed");
  return std::string(buf, res.ptr);
}

namespace {

double parse_double(std::string_view s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw std::invalid_argument("malformed number: " + std::string(s));
  return v;
}

long long parse_int(std::string_view s) {
  long long v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw std::invalid_argument("malformed integer: " + std::string(s));
  return v;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : line) {
    if (c == sep) {
      parts.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  parts.push_back(current);
  return parts;
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

void finalize_means(MetricReport& rep) {
  rep.mean_gd = rep.mean_spread = rep.mean_hv = 0.0;
  for (const MetricRow& row : rep.rows) {
    rep.mean_gd += row.gd;
    rep.mean_spread += row.spread;
    rep.mean_hv += row.hv;
  }
  const double n = static_cast<double>(rep.rows.size());
  rep.mean_gd /= n;
  rep.mean_spread /= n;
  rep.mean_hv /= n;
}

std::vector<std::string> parse_list(const std::string& value) {
  std::vector<std::string> items;
  for (const std::string& item : split(value, ','))
    if (const std::string trimmed = trim(item); !trimmed.empty()) items.push_back(trimmed);
  return items;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::string report_csv(const MetricReport& rep) {
  std::string csv = "window,t,gd,spread,hv\n";
  for (const MetricRow& row : rep.rows) {
    csv += std::to_string(row.window);
    csv += ',';
    csv += fmt_double(row.t);
    csv += ',';
    csv += fmt_double(row.gd);
    csv += ',';
    csv += fmt_double(row.spread);
    csv += ',';
    csv += fmt_double(row.hv);
    csv += '\n';
  }
  return csv;
}

std::string trace_csv(const RunTrace& trace) {
  std::string csv = "window,t,f1,f2\n";
  for (const WindowSnapshot& snap : trace.windows) {
    for (const ObjectiveVector& f : snap.objectives) {
      csv += std::to_string(snap.window);
      csv += ',';
      csv += fmt_double(snap.t);
      csv += ',';
      csv += fmt_double(f[0]);
      csv += ',';
      csv += fmt_double(f[1]);
      csv += '\n';
    }
  }
  return csv;
}

std::string points_block(std::vector<ObjectiveVector> points) {
  std::stable_sort(points.begin(), points.end(),
                   [](const ObjectiveVector& a, const ObjectiveVector& b) {
                     if (a[0] != b[0]) return a[0] < b[0];
                     return a[1] < b[1];
                   });
  std::string block;
  for (const ObjectiveVector& f : points) {
    block += fmt_double(f[0]);
    block += ' ';
    block += fmt_double(f[1]);
    block += '\n';
  }
  return block;
}

std::string hv_curve_block(const MetricReport& rep) {
  std::string block;
  for (const MetricRow& row : rep.rows) {
    block += std::to_string(row.window);
    block += ' ';
    block += fmt_double(row.hv);
    block += '\n';
  }
  return block;
}

struct CellSpec {
  std::string problem;
  std::string algorithm;
  int run = 0;
};

/// "problem__algorithm__runNNN" -> its parts; throws on anything else.
CellSpec parse_stem(const std::string& stem) {
  const auto first = stem.find("__");
  const auto last = stem.rfind("__");
  if (first == std::string::npos || last == first)
    throw std::invalid_argument("unrecognized cell file name: " + stem);
  CellSpec spec;
  spec.problem = stem.substr(0, first);
  spec.algorithm = stem.substr(first + 2, last - first - 2);
  const std::string run_part = stem.substr(last + 2);
  if (run_part.rfind("run", 0) != 0)
    throw std::invalid_argument("unrecognized cell file name: " + stem);
  spec.run = static_cast<int>(parse_int(run_part.substr(3)));
  return spec;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (problems.empty()) throw std::invalid_argument("config: no problems selected");
  if (algorithms.empty()) throw std::invalid_argument("config: no algorithms selected");
  for (const std::string& p : problems) parse_benchmark_id(p);
  for (const std::string& a : algorithms)
    if (a != kDynamicMopsoId && a != kOmopsoId && a != kNsga2Id)
      throw std::invalid_argument("unknown algorithm id: " + a);
  if (std::set<std::string>(problems.begin(), problems.end()).size() != problems.size())
    throw std::invalid_argument("config: duplicate problem ids");
  if (std::set<std::string>(algorithms.begin(), algorithms.end()).size() != algorithms.size())
    throw std::invalid_argument("config: duplicate algorithm ids");
  if (runs < 1) throw std::invalid_argument("config: runs must be positive");
  if (dimension < 2) throw std::invalid_argument("config: dimension must be at least 2");
  if (workers < 0) throw std::invalid_argument("config: workers must be non-negative");
  if (out_dir.empty()) throw std::invalid_argument("config: output directory is empty");
  pso.validate();
  Nsga2Config synced = nsga;
  synced.severity = pso.severity;
  synced.frequency = pso.frequency;
  synced.max_iterations = pso.max_iterations;
  synced.validate();
}

void apply_config_file(const fs::path& path, ExperimentConfig& config) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config file: " + path.string());
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line.substr(0, line.find('#')));
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(path.string() + ":" + std::to_string(line_no) +
                                  ": expected key=value");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key == "problems") {
      config.problems = parse_list(value);
    } else if (key == "algorithms") {
      config.algorithms = parse_list(value);
    } else if (key == "runs") {
      config.runs = static_cast<int>(parse_int(value));
    } else if (key == "seed") {
      config.base_seed = static_cast<std::uint64_t>(parse_int(value));
    } else if (key == "out") {
      config.out_dir = value;
    } else if (key == "iterations") {
      config.pso.max_iterations = static_cast<int>(parse_int(value));
    } else if (key == "severity") {
      config.pso.severity = static_cast<int>(parse_int(value));
    } else if (key == "frequency") {
      config.pso.frequency = static_cast<int>(parse_int(value));
    } else if (key == "dimension") {
      config.dimension = static_cast<int>(parse_int(value));
    } else if (key == "workers") {
      config.workers = static_cast<int>(parse_int(value));
    } else if (key == "swarm_size") {
      config.pso.swarm_size = static_cast<int>(parse_int(value));
    } else if (key == "archive_capacity") {
      config.pso.archive_capacity = static_cast<std::size_t>(parse_int(value));
    } else if (key == "nsga_population") {
      config.nsga.population_size = static_cast<int>(parse_int(value));
    } else if (key == "nsga_budget") {
      config.nsga.evaluation_budget = parse_int(value);
    } else {
      throw std::invalid_argument(path.string() + ":" + std::to_string(line_no) +
                                  ": unknown key '" + key + "'");
    }
  }
}

std::uint64_t cell_seed(std::uint64_t base_seed, std::string_view algorithm,
                        std::string_view problem, int run) {
  std::uint64_t h = splitmix64(base_seed);
  h = hash_combine(h, algorithm);
  h = hash_combine(h, problem);
  h = hash_combine(h, static_cast<std::uint64_t>(run));
  return h;
}

std::string cell_stem(std::string_view problem, std::string_view algorithm, int run) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "run%03d", run);
  std::string stem(problem);
  stem += "__";
  stem += algorithm;
  stem += "__";
  stem += buf;
  return stem;
}

RunTrace run_cell(const std::string& problem_id, const std::string& algorithm_id,
                  const ExperimentConfig& config, std::uint64_t seed) {
  const BenchmarkSpec spec{parse_benchmark_id(problem_id), config.dimension};
  const DynamicProblem problem =
      make_problem(spec, hash_combine(seed, "problem"), config.pso.severity);
  if (algorithm_id == kDynamicMopsoId) {
    OptimizerConfig cfg = config.pso;
    cfg.seed = seed;
    return run_dynamic_mopso(problem, cfg);
  }
  if (algorithm_id == kOmopsoId) {
    OptimizerConfig cfg = config.pso;
    cfg.seed = seed;
    return run_omopso(problem, cfg);
  }
  if (algorithm_id == kNsga2Id) {
    Nsga2Config cfg = config.nsga;
    cfg.severity = config.pso.severity;
    cfg.frequency = config.pso.frequency;
    cfg.max_iterations = config.pso.max_iterations;
    cfg.seed = seed;
    return run_nsga2(problem, cfg);
  }
  throw std::invalid_argument("unknown algorithm id: " + algorithm_id);
}

Stats compute_stats(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("compute_stats: no values");
  Stats stats;
  std::sort(values.begin(), values.end());
  stats.min = values.front();
  stats.max = values.back();
  for (double v : values) stats.mean += v;
  stats.mean /= static_cast<double>(values.size());
  const std::size_t n = values.size();
  stats.median = n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
  if (n > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - stats.mean) * (v - stats.mean);
    stats.sd = std::sqrt(ss / static_cast<double>(n - 1));
  }
  return stats;
}

std::vector<SummaryRow> summarize(const std::vector<CellResult>& cells) {
  // (problem, algorithm) -> per-metric lists of per-run aggregate means.
  std::map<std::pair<std::string, std::string>, std::array<std::vector<double>, 3>> groups;
  std::set<std::pair<std::string, std::string>> seen;
  for (const CellResult& cell : cells) {
    seen.insert({cell.problem, cell.algorithm});
    if (!cell.ok) continue;
    auto& bucket = groups[{cell.problem, cell.algorithm}];
    bucket[0].push_back(cell.report.mean_gd);
    bucket[1].push_back(cell.report.mean_spread);
    bucket[2].push_back(cell.report.mean_hv);
  }
  for (const auto& key : seen)
    if (!groups.contains(key))
      std::cerr << "warning: no successful runs for " << key.first << " / " << key.second
                << "; omitted from the summary\n";

  static constexpr const char* kMetricNames[3] = {"gd", "spread", "hv"};
  std::vector<SummaryRow> rows;
  for (const auto& [key, bucket] : groups) {
    for (int m = 0; m < 3; ++m) {
      SummaryRow row;
      row.problem = key.first;
      row.algorithm = key.second;
      row.metric = kMetricNames[m];
      row.stats = compute_stats(bucket[m]);
      rows.push_back(std::move(row));
    }
  }
  // Flag the best mean per (problem, metric): low wins for gd and spread,
  // high wins for hv.
  for (SummaryRow& row : rows) {
    bool best = true;
    for (const SummaryRow& other : rows) {
      if (other.problem != row.problem || other.metric != row.metric) continue;
      if (row.metric == "hv" ? other.stats.mean > row.stats.mean
                             : other.stats.mean < row.stats.mean)
        best = false;
    }
    row.best = best;
  }
  std::sort(rows.begin(), rows.end(), [](const SummaryRow& a, const SummaryRow& b) {
    if (a.problem != b.problem) return a.problem < b.problem;
    if (a.algorithm != b.algorithm) return a.algorithm < b.algorithm;
    // gd, spread, hv in that fixed order
    const auto rank = [](const std::string& m) { return m == "gd" ? 0 : m == "spread" ? 1 : 2; };
    return rank(a.metric) < rank(b.metric);
  });
  return rows;
}

namespace {

std::string summary_csv(const std::vector<SummaryRow>& rows) {
  std::string csv = "problem,algorithm,metric,mean,median,sd,min,max,best\n";
  for (const SummaryRow& row : rows) {
    csv += row.problem;
    csv += ',';
    csv += row.algorithm;
    csv += ',';
    csv += row.metric;
    csv += ',';
    csv += fmt_double(row.stats.mean);
    csv += ',';
    csv += fmt_double(row.stats.median);
    csv += ',';
    csv += fmt_double(row.stats.sd);
    csv += ',';
    csv += fmt_double(row.stats.min);
    csv += ',';
    csv += fmt_double(row.stats.max);
    csv += ',';
    csv += row.best ? '1' : '0';
    csv += '\n';
  }
  return csv;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();

  const fs::path out(config.out_dir);
  fs::create_directories(out / "reports");
  fs::create_directories(out / "traces");
  fs::create_directories(out / "fronts");
  fs::create_directories(out / "hv");

  std::vector<CellResult> cells;
  for (const std::string& problem : config.problems)
    for (const std::string& algorithm : config.algorithms)
      for (int run = 0; run < config.runs; ++run)
        cells.push_back({problem, algorithm, run, false, "", {}});

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers =
      std::min<std::size_t>(config.workers > 0 ? config.workers : hw, cells.size());

  std::atomic<std::size_t> next{0};
  const auto worker = [&]() {
    for (std::size_t i = next.fetch_add(1); i < cells.size(); i = next.fetch_add(1)) {
      CellResult& cell = cells[i];
      try {
        const std::uint64_t seed =
            cell_seed(config.base_seed, cell.algorithm, cell.problem, cell.run);
        const RunTrace trace = run_cell(cell.problem, cell.algorithm, config, seed);
        const BenchmarkSpec spec{parse_benchmark_id(cell.problem), config.dimension};
        cell.report = report(trace, spec);

        const std::string stem = cell_stem(cell.problem, cell.algorithm, cell.run);
        write_file(out / "reports" / (stem + ".csv"), report_csv(cell.report));
        write_file(out / "traces" / (stem + ".csv"), trace_csv(trace));
        std::vector<ObjectiveVector> final_front;
        final_front.reserve(trace.final_solutions.size());
        for (const ArchiveEntry& e : trace.final_solutions) final_front.push_back(e.f);
        write_file(out / "fronts" / (stem + "_final.dat"), points_block(std::move(final_front)));
        write_file(out / "hv" / (stem + ".dat"), hv_curve_block(cell.report));
        cell.ok = true;
      } catch (const std::exception& e) {
        cell.ok = false;
        cell.error = e.what();
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (std::thread& th : pool) th.join();

  ExperimentResult result;
  result.summary = summarize(cells);
  write_file(out / "summary.csv", summary_csv(result.summary));

  std::string failures;
  for (const CellResult& cell : cells)
    if (!cell.ok)
      failures += cell.problem + "," + cell.algorithm + "," + std::to_string(cell.run) + "," +
                  cell.error + "\n";
  if (!failures.empty()) {
    write_file(out / "failures.txt", failures);
    std::cerr << "warning: " << std::count(failures.begin(), failures.end(), '\n')
              << " cell(s) failed; see " << (out / "failures.txt").string() << "\n";
    result.exit_code = 2;
  }
  result.cells = std::move(cells);
  return result;
}

void emit_front_snapshot(const RunTrace& trace, int window, const fs::path& path) {
  for (const WindowSnapshot& snap : trace.windows) {
    if (snap.window != window) continue;
    write_file(path, points_block(snap.objectives));
    return;
  }
  throw std::out_of_range("emit_front_snapshot: trace has no window " + std::to_string(window));
}

int recompute_metrics(const fs::path& out_dir) {
  const fs::path traces = out_dir / "traces";
  if (!fs::is_directory(traces)) {
    std::cerr << "error: " << traces.string() << " is not a directory\n";
    return 1;
  }
  fs::create_directories(out_dir / "reports");

  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(traces))
    if (entry.is_regular_file() && entry.path().extension() == ".csv")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());

  int failures = 0;
  for (const fs::path& file : files) {
    try {
      const CellSpec cell = parse_stem(file.stem().string());
      const BenchmarkSpec spec{parse_benchmark_id(cell.problem), 10};

      std::ifstream in(file);
      if (!in) throw std::runtime_error("cannot read " + file.string());
      std::string line;
      if (!std::getline(in, line) || trim(line) != "window,t,f1,f2")
        throw std::invalid_argument(file.string() + ": unexpected trace header");
      std::vector<WindowSnapshot> snaps;
      while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        const std::vector<std::string> parts = split(trim(line), ',');
        if (parts.size() != 4)
          throw std::invalid_argument(file.string() + ": malformed trace row");
        const int window = static_cast<int>(parse_int(parts[0]));
        const double t = parse_double(parts[1]);
        ObjectiveVector f(2);
        f << parse_double(parts[2]), parse_double(parts[3]);
        if (snaps.empty() || snaps.back().window != window)
          snaps.push_back({window, t, {}});
        snaps.back().objectives.push_back(std::move(f));
      }
      if (snaps.empty()) throw std::invalid_argument(file.string() + ": empty trace");

      MetricReport rep;
      for (const WindowSnapshot& snap : snaps)
        rep.rows.push_back(score_snapshot(snap.window, snap.t, snap.objectives, spec));
      finalize_means(rep);
      write_file(out_dir / "reports" / file.filename(), report_csv(rep));
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      ++failures;
    }
  }
  if (files.empty()) {
    std::cerr << "error: no trace files in " << traces.string() << "\n";
    return 1;
  }
  return failures == 0 ? 0 : 2;
}

int rebuild_summary(const fs::path& out_dir) {
  const fs::path reports = out_dir / "reports";
  if (!fs::is_directory(reports)) {
    std::cerr << "error: " << reports.string() << " is not a directory\n";
    return 1;
  }

  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(reports))
    if (entry.is_regular_file() && entry.path().extension() == ".csv")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    std::cerr << "error: no report files in " << reports.string() << "\n";
    return 1;
  }

  int failures = 0;
  std::vector<CellResult> cells;
  for (const fs::path& file : files) {
    try {
      const CellSpec spec = parse_stem(file.stem().string());
      std::ifstream in(file);
      if (!in) throw std::runtime_error("cannot read " + file.string());
      std::string line;
      if (!std::getline(in, line) || trim(line) != "window,t,gd,spread,hv")
        throw std::invalid_argument(file.string() + ": unexpected report header");
      MetricReport rep;
      while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        const std::vector<std::string> parts = split(trim(line), ',');
        if (parts.size() != 5)
          throw std::invalid_argument(file.string() + ": malformed report row");
        MetricRow row;
        row.window = static_cast<int>(parse_int(parts[0]));
        row.t = parse_double(parts[1]);
        row.gd = parse_double(parts[2]);
        row.spread = parse_double(parts[3]);
        row.hv = parse_double(parts[4]);
        rep.rows.push_back(row);
      }
      if (rep.rows.empty()) throw std::invalid_argument(file.string() + ": empty report");
      finalize_means(rep);
      cells.push_back({spec.problem, spec.algorithm, spec.run, true, "", std::move(rep)});
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      ++failures;
    }
  }
  if (cells.empty()) {
    std::cerr << "error: no readable report files in " << reports.string() << "\n";
    return failures ? 2 : 1;
  }
  write_file(out_dir / "summary.csv", summary_csv(summarize(cells)));
  return failures == 0 ? 0 : 2;
}

}  // namespace dmopt
