#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "svmkit/dataset.hpp"
#include "svmkit/qp.hpp"
#include "svmkit/svc.hpp"

namespace svmkit::experiments {

// Seeded replication harness for the bundled benchmark experiments:
//   blobs-separable   widely separated normal clouds, linear kernel
//   blobs-overlap     overlapping clouds, error near the optimal rule
//   blobs-outliers    decision-function stability under far outliers
//   c-sweep           support-vector growth as C shrinks
//   waveform          three-class waveform mixture, one-against-one
struct ExperimentConfig {
  std::string id;
  int replications = 0;  // 0 = experiment default
  std::uint64_t seed = 1;
  std::optional<double> tolerance;  // solver default when unset
  std::optional<KernelSpec> kernel;
  std::optional<double> cost;
  std::vector<double> cost_sweep;  // c-sweep only
  bool verbose = false;
};

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ExperimentReport {
  std::string id;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> aggregates;  // mean / standard-error lines
  std::vector<Check> checks;
  std::vector<std::string> notes;  // replay info: seeds, rng id, solver config

  bool passed() const;
  std::string table() const;    // tab-separated, header first
  std::string summary() const;  // human-readable report
};

ExperimentReport run_experiment(const ExperimentConfig& config);

// 2-D hyperplane helpers for linear models: a*x + b*y + c = 0.
struct Line2d {
  double a = 0.0, b = 0.0, c = 0.0;
};
Line2d hyperplane_line(const SvcModel& model);
Line2d scale_x_to_one(const Line2d& line);         // a -> 1
Line2d scale_y_to_one(const Line2d& line);         // b -> 1
Line2d scale_constant_to_minus_one(const Line2d& line);  // c -> -1

// Synthetic two-topic document set: sparse term counts in `dim`
// dimensions, each class drawing its signal tokens from its own block and
// the rest from a shared block. Labels are +/-1, classes balanced.
Dataset gen_two_topic(std::size_t count, int dim, std::uint64_t seed);

// 1-nearest-neighbor error of `test` against `train` under Euclidean
// distance; the comparison baseline for the sparse-text experiment.
double nn1_error(const Dataset& train, const Dataset& test);

}  // namespace svmkit::experiments
