#pragma once

#include <functional>
#include <string>
#include <vector>

#include "trajmetric/trajectory.hpp"

namespace trajmetric {

struct ScenarioConfig {
  int n_max = 4;
  int T = 20;
  int state_dim = 2;
  double birth_region_min = 0.0;
  double birth_region_max = 20.0;
  double birth_var = 5.0;
  double survival_prob = 0.999;
  // transition noise variances cycle over the state components
  std::vector<double> transition_var = {0.1, 0.01};
  std::uint64_t seed = 0;

  void validate() const;
};

/// Random set of trajectories: cardinality uniform on {1..n_max}, start times
/// uniform on {1..T}, Gaussian births, identity dynamics with Gaussian noise,
/// geometric lifetime via the survival probability.  Each trajectory draws
/// from its own counter-split stream, so the output is seed-deterministic.
TrajectorySet generate_scenario(const ScenarioConfig& config);

struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
  int samples = 0;
  int failures = 0;  // solver failures skipped during averaging
};

using PairSampler = std::function<std::pair<TrajectorySet, TrajectorySet>(int)>;
using PairMetric =
    std::function<double(const TrajectorySet&, const TrajectorySet&)>;

/// Monte-Carlo estimate of (E[d^p])^{1/p}.  The std error of the p-th root is
/// obtained from the sample variance of d^p by the delta method.
McEstimate rfs_metric_mc(const PairSampler& sampler, const MetricParams& params,
                         int num_samples, const PairMetric& metric);

struct BenchCell {
  std::string solver;
  int T = 0;
  int n_max = 0;
  int reps = 0;
  double mean_runtime_sec = 0.0;
  double mean_value = 0.0;
  bool complete = false;
  std::string error;
};

struct BenchGrid {
  std::vector<int> T_values;
  std::vector<int> n_max_values;
  std::vector<std::string> solvers;  // "viterbi", "lp", "admm"
};

std::vector<BenchCell> benchmark_scaling(const BenchGrid& grid,
                                         const MetricParams& params, int reps,
                                         std::uint64_t seed);

/// CSV rendering of a benchmark table (schema version 1).
std::string bench_to_csv(const std::vector<BenchCell>& cells);

}  // namespace trajmetric
