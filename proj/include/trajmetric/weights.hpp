#pragma once

#include <Eigen/Dense>
#include <vector>

#include "trajmetric/assignment.hpp"
#include "trajmetric/trajectory.hpp"

namespace trajmetric {

/// (n_x+1) x (n_y+1) association weights; the last row/column stand for the
/// unassigned index.  Hard assignments are the binary members.
using WeightMatrix = Eigen::MatrixXd;

/// Binary weight matrix of a hard assignment.
WeightMatrix pi_to_W(const AssignmentVector& pi, int n_y);

/// Inverse of pi_to_W; input must be binary and feasible.
AssignmentVector W_to_pi(const WeightMatrix& w);

/// Largest violation of the weight polytope constraints (row/column sums,
/// zero corner, nonnegativity).  0 means feasible.
double weight_violation(const WeightMatrix& w);

/// Additive split of the p-th power objective into its four sources.
struct CostBreakdown {
  double localization = 0.0;
  double missed = 0.0;
  double false_ = 0.0;
  double switching = 0.0;

  double total() const { return localization + missed + false_ + switching; }
};

/// Attributes the mass of a per-step weight sequence to localization,
/// missed, false and switching cost.  The parts sum to the objective value
/// of the weights.
CostBreakdown decompose(const std::vector<WeightMatrix>& weights,
                        const TrajectorySet& x, const TrajectorySet& y,
                        const MetricParams& params);

/// p-th power objective of a feasible weight sequence:
/// sum_k tr(D_k^T W_k) + (gamma^p/2) sum_k |W_k - W_{k+1}| over real cells.
double raw_objective(const std::vector<WeightMatrix>& weights,
                     const TrajectorySet& x, const TrajectorySet& y,
                     const MetricParams& params);

}  // namespace trajmetric
