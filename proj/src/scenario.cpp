#include "trajmetric/scenario.hpp"

#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

#include "trajmetric/admm.hpp"
#include "trajmetric/errors.hpp"
#include "trajmetric/exact.hpp"
#include "trajmetric/lp.hpp"

namespace trajmetric {

namespace {

// splitmix64 finalizer; decorrelates (seed, counter) pairs so per-trajectory
// streams do not depend on draw order
std::uint64_t split_seed(std::uint64_t seed, std::uint64_t counter) {
  std::uint64_t z = seed + counter * 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

void ScenarioConfig::validate() const {
  if (n_max < 1) throw ValidationError("n_max must be >= 1");
  if (T < 1) throw ValidationError("T must be >= 1");
  if (state_dim < 1) throw ValidationError("state_dim must be >= 1");
  if (!(survival_prob > 0.0) || survival_prob > 1.0)
    throw ValidationError("survival_prob must be in (0, 1]");
  if (!(birth_var >= 0.0)) throw ValidationError("birth_var must be >= 0");
  if (birth_region_max < birth_region_min)
    throw ValidationError("birth region is empty");
  if (transition_var.empty())
    throw ValidationError("transition_var must be nonempty");
  for (double v : transition_var)
    if (!(v >= 0.0)) throw ValidationError("transition_var entries must be >= 0");
}

TrajectorySet generate_scenario(const ScenarioConfig& config) {
  config.validate();
  TrajectorySet set;
  set.window = config.T;
  set.state_dim = config.state_dim;

  std::mt19937_64 top(split_seed(config.seed, 0));
  std::uniform_int_distribution<int> card_dist(1, config.n_max);
  const int n = card_dist(top);

  for (int t = 0; t < n; ++t) {
    std::mt19937_64 rng(split_seed(config.seed, 1 + static_cast<std::uint64_t>(t)));
    std::uniform_int_distribution<int> start_dist(1, config.T);
    std::uniform_real_distribution<double> region(config.birth_region_min,
                                                  config.birth_region_max);
    std::normal_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> coin(0.0, 1.0);

    Trajectory traj;
    traj.start = start_dist(rng);
    Eigen::VectorXd state(config.state_dim);
    for (int d = 0; d < config.state_dim; ++d)
      state(d) = region(rng) + std::sqrt(config.birth_var) * unit(rng);
    traj.states.push_back(state);
    for (int k = traj.start + 1; k <= config.T; ++k) {
      if (coin(rng) > config.survival_prob) break;
      for (int d = 0; d < config.state_dim; ++d) {
        const double var =
            config.transition_var[static_cast<size_t>(d) % config.transition_var.size()];
        state(d) += std::sqrt(var) * unit(rng);
      }
      traj.states.push_back(state);
    }
    set.trajectories.push_back(std::move(traj));
  }
  return set;
}

McEstimate rfs_metric_mc(const PairSampler& sampler, const MetricParams& params,
                         int num_samples, const PairMetric& metric) {
  if (num_samples < 1) throw ValidationError("num_samples must be >= 1");
  params.validate();

  McEstimate est;
  // Welford running moments: exact for constant samples, stable otherwise
  double mean_p = 0.0, m2 = 0.0;
  int used = 0;
  for (int s = 0; s < num_samples; ++s) {
    auto [x, y] = sampler(s);
    double dp;
    try {
      dp = std::pow(metric(x, y), params.p);
    } catch (const SolverError&) {
      ++est.failures;
      continue;
    } catch (const CapExceededError&) {
      ++est.failures;
      continue;
    }
    ++used;
    const double delta = dp - mean_p;
    mean_p += delta / used;
    m2 += delta * (dp - mean_p);
  }
  if (used == 0) throw SolverError("all Monte-Carlo samples failed");

  est.samples = used;
  est.value = std::pow(std::max(mean_p, 0.0), 1.0 / params.p);
  if (used > 1) {
    const double var = std::max(m2 / (used - 1), 0.0);
    const double se_mean = std::sqrt(var / used);
    // delta method for x -> x^{1/p} at the sample mean
    if (mean_p > 0.0) {
      est.std_error = se_mean * std::fabs(1.0 / params.p) *
                      std::pow(mean_p, 1.0 / params.p - 1.0);
    } else {
      est.std_error = 0.0;
    }
  }
  return est;
}

std::vector<BenchCell> benchmark_scaling(const BenchGrid& grid,
                                         const MetricParams& params, int reps,
                                         std::uint64_t seed) {
  if (grid.T_values.empty() || grid.n_max_values.empty() || grid.solvers.empty())
    throw ValidationError("benchmark grid must be nonempty");
  if (reps < 1) throw ValidationError("reps must be >= 1");
  params.validate();

  std::vector<BenchCell> cells;
  std::uint64_t cell_index = 0;
  for (const auto& solver : grid.solvers) {
    for (int T : grid.T_values) {
      for (int n_max : grid.n_max_values) {
        BenchCell cell;
        cell.solver = solver;
        cell.T = T;
        cell.n_max = n_max;
        cell.reps = reps;
        double time_sum = 0.0, value_sum = 0.0;
        try {
          for (int r = 0; r < reps; ++r) {
            ScenarioConfig cfg;
            cfg.n_max = n_max;
            cfg.T = T;
            cfg.seed = split_seed(seed, cell_index * 1000003ULL + 2 * r);
            const TrajectorySet x = generate_scenario(cfg);
            cfg.seed = split_seed(seed, cell_index * 1000003ULL + 2 * r + 1);
            const TrajectorySet y = generate_scenario(cfg);

            const auto t0 = std::chrono::steady_clock::now();
            double value;
            if (solver == "viterbi") {
              value = exact_metric(x, y, params).value;
            } else if (solver == "lp") {
              value = lp_metric(x, y, params).value;
            } else if (solver == "admm") {
              value = admm_metric(x, y, params).value;
            } else {
              throw ValidationError("unknown solver: " + solver);
            }
            const auto t1 = std::chrono::steady_clock::now();
            time_sum += std::chrono::duration<double>(t1 - t0).count();
            value_sum += value;
          }
          cell.mean_runtime_sec = time_sum / reps;
          cell.mean_value = value_sum / reps;
          cell.complete = true;
        } catch (const std::exception& e) {
          cell.error = e.what();
        }
        cells.push_back(std::move(cell));
        ++cell_index;
      }
    }
  }
  return cells;
}

std::string bench_to_csv(const std::vector<BenchCell>& cells) {
  std::ostringstream oss;
  oss.precision(17);
  oss << "schema_version,solver,T,n_max,reps,mean_runtime_sec,mean_value,complete,error\n";
  for (const auto& c : cells) {
    std::string err = c.error;
    for (auto& ch : err)
      if (ch == ',' || ch == '\n') ch = ';';
    oss << 1 << "," << c.solver << "," << c.T << "," << c.n_max << "," << c.reps
        << "," << c.mean_runtime_sec << "," << c.mean_value << ","
        << (c.complete ? 1 : 0) << "," << err << "\n";
  }
  return oss.str();
}

}  // namespace trajmetric
