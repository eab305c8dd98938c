// Command-line front end: `run` executes the experiment grid, `metrics`
// rebuilds metric reports from stored traces, `summarize` rebuilds the
// summary table from reports.

#include <cstdio>
#include <cstdlib>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dmopt/harness.hpp"

namespace {

std::string default_out_dir() {
  if (const char* env = std::getenv(dmopt::kOutDirEnvVar); env && *env) return env;
  return "results";
}

void print_summary(const std::vector<dmopt::SummaryRow>& rows) {
  std::printf("%-8s %-14s %-7s %12s %12s %12s %12s %12s %5s\n", "problem", "algorithm",
              "metric", "mean", "median", "sd", "min", "max", "best");
  for (const dmopt::SummaryRow& row : rows)
    std::printf("%-8s %-14s %-7s %12.5g %12.5g %12.5g %12.5g %12.5g %5s\n",
                row.problem.c_str(), row.algorithm.c_str(), row.metric.c_str(),
                row.stats.mean, row.stats.median, row.stats.sd, row.stats.min, row.stats.max,
                row.best ? "*" : "");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamic multi-objective optimization experiment harness"};
  app.require_subcommand(1);

  // run
  CLI::App* run = app.add_subcommand("run", "Execute the problems x algorithms x runs grid");
  std::string config_file;
  std::vector<std::string> problems;
  std::vector<std::string> algorithms;
  int runs = 0;
  std::uint64_t seed = 0;
  std::string out_dir;
  int iterations = 0;
  int severity = 0;
  int frequency = 0;
  int dimension = 0;
  int workers = -1;
  int swarm_size = 0;
  int archive_capacity = 0;
  int nsga_population = 0;
  long long nsga_budget = 0;
  run->add_option("--config", config_file, "Flat key=value configuration file");
  run->add_option("--problem", problems, "Problem ids (fda1, dimp2, dmop3); repeatable");
  run->add_option("--algorithm", algorithms,
                  "Algorithm ids (dynamic-mopso, omopso, nsga2); repeatable");
  run->add_option("--runs", runs, "Independent runs per grid cell");
  run->add_option("--seed", seed, "Base seed the per-cell seeds derive from");
  run->add_option("--out", out_dir, "Output directory (env DMOPT_OUT overrides the default)");
  run->add_option("--iterations", iterations, "Swarm iterations per run");
  run->add_option("--severity", severity, "Change severity n_t (t steps by 1/n_t)");
  run->add_option("--frequency", frequency, "Change frequency tau_t (iterations per window)");
  run->add_option("--dimension", dimension, "Decision-space dimension");
  run->add_option("--workers", workers, "Worker threads (0 = hardware concurrency)");
  run->add_option("--swarm-size", swarm_size, "Particles per swarm");
  run->add_option("--archive-capacity", archive_capacity, "External archive capacity");
  run->add_option("--nsga-population", nsga_population, "NSGA-II population size");
  run->add_option("--nsga-budget", nsga_budget, "NSGA-II evaluation budget");

  // metrics
  CLI::App* metrics = app.add_subcommand("metrics", "Recompute reports/ from traces/");
  std::string metrics_dir;
  metrics->add_option("--out", metrics_dir, "Experiment output directory");

  // summarize
  CLI::App* summarize = app.add_subcommand("summarize", "Rebuild summary.csv from reports/");
  std::string summarize_dir;
  summarize->add_option("--out", summarize_dir, "Experiment output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (run->parsed()) {
      dmopt::ExperimentConfig config;
      config.out_dir = default_out_dir();
      if (run->count("--config")) dmopt::apply_config_file(config_file, config);
      if (run->count("--problem")) config.problems = problems;
      if (run->count("--algorithm")) config.algorithms = algorithms;
      if (run->count("--runs")) config.runs = runs;
      if (run->count("--seed")) config.base_seed = seed;
      if (run->count("--out")) config.out_dir = out_dir;
      if (run->count("--iterations")) config.pso.max_iterations = iterations;
      if (run->count("--severity")) config.pso.severity = severity;
      if (run->count("--frequency")) config.pso.frequency = frequency;
      if (run->count("--dimension")) config.dimension = dimension;
      if (run->count("--workers")) config.workers = workers;
      if (run->count("--swarm-size")) config.pso.swarm_size = swarm_size;
      if (run->count("--archive-capacity"))
        config.pso.archive_capacity = static_cast<std::size_t>(archive_capacity);
      if (run->count("--nsga-population")) config.nsga.population_size = nsga_population;
      if (run->count("--nsga-budget")) config.nsga.evaluation_budget = nsga_budget;

      const dmopt::ExperimentResult result = dmopt::run_experiment(config);
      print_summary(result.summary);
      std::printf("\nwrote %s\n",
                  (std::filesystem::path(config.out_dir) / "summary.csv").string().c_str());
      return result.exit_code;
    }
    if (metrics->parsed()) {
      const std::string dir = metrics->count("--out") ? metrics_dir : default_out_dir();
      return dmopt::recompute_metrics(dir);
    }
    const std::string dir = summarize->count("--out") ? summarize_dir : default_out_dir();
    return dmopt::rebuild_summary(dir);
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
