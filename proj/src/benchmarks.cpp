#include "dmopt/benchmarks.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dmopt/rng.hpp"

namespace dmopt {

namespace {

constexpr double kPi = std::numbers::pi;

void check_dimension(const DecisionVector& x, const char* name) {
  if (x.size() < 2)
    throw std::invalid_argument(std::string(name) + ": needs at least two variables");
}

void check_bounds(const DecisionVector& x, const Eigen::VectorXd& lo, const Eigen::VectorXd& hi,
                  const char* name) {
  if ((x.array() < lo.array()).any() || (x.array() > hi.array()).any())
    throw std::invalid_argument(std::string(name) + ": decision vector out of bounds");
}

/// f2 of the shared template given f1 and g.
double shape_f2(double f1, double g) { return g * (1.0 - std::sqrt(f1 / g)); }

ObjectiveVector pack(double f1, double f2) {
  ObjectiveVector f(2);
  f << f1, f2;
  return f;
}

}  // namespace

BenchmarkId parse_benchmark_id(const std::string& id) {
  if (id == "fda1") return BenchmarkId::Fda1;
  if (id == "dimp2") return BenchmarkId::Dimp2;
  if (id == "dmop3") return BenchmarkId::Dmop3;
  throw std::invalid_argument("unknown benchmark id: " + id);
}

std::string to_string(BenchmarkId id) {
  switch (id) {
    case BenchmarkId::Fda1: return "fda1";
    case BenchmarkId::Dimp2: return "dimp2";
    case BenchmarkId::Dmop3: return "dmop3";
  }
  throw std::invalid_argument("unknown benchmark id");
}

Eigen::VectorXd benchmark_lower_bounds(const BenchmarkSpec& spec) {
  if (spec.dimension < 2)
    throw std::invalid_argument("benchmark dimension must be at least 2");
  Eigen::VectorXd lo(spec.dimension);
  switch (spec.id) {
    case BenchmarkId::Fda1:
      lo.setConstant(-1.0);
      lo[0] = 0.0;
      break;
    case BenchmarkId::Dimp2:
      lo.setConstant(-2.0);
      lo[0] = 0.0;
      break;
    case BenchmarkId::Dmop3:
      lo.setZero();
      break;
  }
  return lo;
}

Eigen::VectorXd benchmark_upper_bounds(const BenchmarkSpec& spec) {
  if (spec.dimension < 2)
    throw std::invalid_argument("benchmark dimension must be at least 2");
  Eigen::VectorXd hi(spec.dimension);
  switch (spec.id) {
    case BenchmarkId::Fda1:
      hi.setOnes();
      break;
    case BenchmarkId::Dimp2:
      hi.setConstant(2.0);
      hi[0] = 1.0;
      break;
    case BenchmarkId::Dmop3:
      hi.setOnes();
      break;
  }
  return hi;
}

double fda1_g(double t) { return std::sin(0.5 * kPi * t); }

ObjectiveVector fda1_evaluate(const DecisionVector& x, double t) {
  check_dimension(x, "fda1");
  const BenchmarkSpec spec{BenchmarkId::Fda1, static_cast<int>(x.size())};
  check_bounds(x, benchmark_lower_bounds(spec), benchmark_upper_bounds(spec), "fda1");
  const double f1 = x[0];
  const double G = fda1_g(t);
  const double g = 1.0 + (x.tail(x.size() - 1).array() - G).square().sum();
  return pack(f1, shape_f2(f1, g));
}

double dimp2_g(double t, int var_index, int dimension) {
  if (var_index < 1 || var_index >= dimension)
    throw std::invalid_argument("dimp2_g: var_index must name a non-position variable");
  // 1-based variable index i = var_index + 1 drives the phase offset.
  const double s =
      std::sin(0.5 * kPi * t + 2.0 * kPi * (var_index + 1) / (dimension + 1.0));
  return s * s;
}

ObjectiveVector dimp2_evaluate(const DecisionVector& x, double t) {
  check_dimension(x, "dimp2");
  const int n = static_cast<int>(x.size());
  const BenchmarkSpec spec{BenchmarkId::Dimp2, n};
  check_bounds(x, benchmark_lower_bounds(spec), benchmark_upper_bounds(spec), "dimp2");
  const double f1 = x[0];
  double g = 1.0 + 2.0 * (n - 1);
  for (int i = 1; i < n; ++i) {
    const double y = x[i] - dimp2_g(t, i, n);
    g += y * y - 2.0 * std::cos(3.0 * kPi * y);
  }
  return pack(f1, shape_f2(f1, g));
}

ObjectiveVector dmop3_evaluate(const DecisionVector& x, double t, int position_index) {
  check_dimension(x, "dmop3");
  const int n = static_cast<int>(x.size());
  if (position_index < 0 || position_index >= n)
    throw std::invalid_argument("dmop3: position_index out of range");
  const BenchmarkSpec spec{BenchmarkId::Dmop3, n};
  check_bounds(x, benchmark_lower_bounds(spec), benchmark_upper_bounds(spec), "dmop3");
  const double f1 = x[position_index];
  const double G = std::sin(0.5 * kPi * t);
  double g = 1.0;
  for (int i = 0; i < n; ++i) {
    if (i == position_index) continue;
    const double y = x[i] - G;
    g += y * y;
  }
  return pack(f1, shape_f2(f1, g));
}

int dmop3_position_index(std::uint64_t seed, long long environment, int dimension) {
  if (dimension < 1) throw std::invalid_argument("dmop3_position_index: dimension must be positive");
  const std::uint64_t h = hash_combine(seed, static_cast<std::uint64_t>(environment));
  return static_cast<int>(
      (static_cast<unsigned __int128>(h) * static_cast<unsigned __int128>(dimension)) >> 64);
}

std::vector<ObjectiveVector> true_pof(const BenchmarkSpec& spec, double t, int resolution) {
  (void)spec;  // the front is shared by all three problems
  (void)t;     // and does not move
  if (resolution < 2) throw std::invalid_argument("true_pof: resolution must be at least 2");
  std::vector<ObjectiveVector> front;
  front.reserve(resolution);
  for (int k = 0; k < resolution; ++k) {
    const double f1 = static_cast<double>(k) / (resolution - 1);
    front.push_back(pack(f1, 1.0 - std::sqrt(f1)));
  }
  return front;
}

DynamicProblem make_problem(const BenchmarkSpec& spec, std::uint64_t seed, int severity) {
  if (severity < 1) throw std::invalid_argument("make_problem: severity must be >= 1");
  DynamicProblem problem;
  problem.name = to_string(spec.id);
  problem.dimension = spec.dimension;
  problem.objectives = 2;
  problem.lower_bounds = benchmark_lower_bounds(spec);
  problem.upper_bounds = benchmark_upper_bounds(spec);
  switch (spec.id) {
    case BenchmarkId::Fda1:
      problem.evaluator = [](const DecisionVector& x, double t) { return fda1_evaluate(x, t); };
      break;
    case BenchmarkId::Dimp2:
      problem.evaluator = [](const DecisionVector& x, double t) { return dimp2_evaluate(x, t); };
      break;
    case BenchmarkId::Dmop3: {
      const int dim = spec.dimension;
      problem.evaluator = [seed, severity, dim](const DecisionVector& x, double t) {
        const long long environment = std::llround(t * severity);
        return dmop3_evaluate(x, t, dmop3_position_index(seed, environment, dim));
      };
      break;
    }
  }
  return problem;
}

}  // namespace dmopt
