#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "trajmetric/errors.hpp"

namespace trajmetric {

/// A trajectory: a 1-based start step and a contiguous run of state vectors.
struct Trajectory {
  int start = 1;                          // first time step the target exists
  std::vector<Eigen::VectorXd> states;    // one state per step, all same dimension

  int length() const { return static_cast<int>(states.size()); }
  int last_step() const { return start + length() - 1; }
};

/// A finite collection of trajectories inside a window of T steps.
/// The list order is kept for reporting assignments; metric values do not
/// depend on it.
struct TrajectorySet {
  std::vector<Trajectory> trajectories;
  int window = 1;     // T
  int state_dim = 1;  // N

  int size() const { return static_cast<int>(trajectories.size()); }
};

using BaseDistanceFn =
    std::function<double(const Eigen::VectorXd&, const Eigen::VectorXd&)>;

/// Metric parameters: cut-off c, switch penalty gamma, exponent p and the
/// base distance on R^N (Euclidean when not set).
struct MetricParams {
  double c = 5.0;
  double gamma = 2.0;
  double p = 1.0;
  BaseDistanceFn base;  // empty -> Euclidean norm

  double base_distance(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
    return base ? base(x, y) : (x - y).norm();
  }
  /// Per-step cost of a missed or false target in p-th power units: c^p / 2.
  double miss_cost_p() const { return 0.5 * std::pow(c, p); }

  void validate() const;
};

/// The state of a trajectory at one time step: empty or a single vector.
using PointSetAtTime = std::optional<Eigen::VectorXd>;

/// State of trajectory x at step k (1-based), empty outside its lifetime.
/// k must lie in [1, window].
PointSetAtTime tau(const Trajectory& x, int k, int window);

/// Base metric between two at-most-singleton sets:
/// min(c, d_b) when both present, 0 when both absent, c / 2^(1/p) otherwise.
double base_distance(const PointSetAtTime& x, const PointSetAtTime& y,
                     const MetricParams& params);

/// Collects every invariant violation of a trajectory set; empty means ok.
std::vector<std::string> validate_set(const TrajectorySet& s);

/// Throws ValidationError listing all violations when the set is malformed.
void require_valid(const TrajectorySet& s);

/// Checks the two sets are comparable (same window and state dimension) and
/// each is internally valid.
void require_compatible(const TrajectorySet& x, const TrajectorySet& y);

/// Set equality up to trajectory order (used by identity tests).
bool sets_equal(const TrajectorySet& x, const TrajectorySet& y, double tol = 0.0);

}  // namespace trajmetric
