#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "trajmetric/weights.hpp"

namespace trajmetric {

/// Sparse minimization LP: min c^T x s.t. rows, x >= 0.
struct LpProblem {
  enum class Sense { kEq, kLe };

  struct Row {
    std::vector<std::pair<int, double>> coeffs;  // (variable index, value)
    Sense sense = Sense::kEq;
    double rhs = 0.0;
  };

  int num_vars = 0;
  Eigen::VectorXd objective;
  std::vector<Row> rows;

  // variable layout metadata for the trajectory-metric LP
  int n_x = 0, n_y = 0, window = 0;

  /// W^k(i,j) with 1-based k and 1-based i in [1, n_x+1], j in [1, n_y+1].
  int w_index(int k, int i, int j) const {
    return (k - 1) * (n_x + 1) * (n_y + 1) + (i - 1) * (n_y + 1) + (j - 1);
  }
  int e_index(int k) const {  // k in [1, T-1]
    return window * (n_x + 1) * (n_y + 1) + (k - 1);
  }
  int h_index(int k, int i, int j) const {  // i in [1,n_x], j in [1,n_y]
    return window * (n_x + 1) * (n_y + 1) + (window - 1) +
           (k - 1) * n_x * n_y + (i - 1) * n_y + (j - 1);
  }
};

/// LP whose optimum is the p-th power of the relaxation metric: W variables
/// per step plus switching slack variables e^k and H^k.
LpProblem build_lp(const TrajectorySet& x, const TrajectorySet& y,
                   const MetricParams& params);

struct SimplexOptions {
  double pivot_tol = 1e-9;
  double cost_tol = 1e-9;
  int max_iterations = 0;          // 0 -> automatic from problem size
  int refactor_every = 250;
  int degenerate_streak_for_bland = 40;
};

struct LpSolution {
  double objective = 0.0;
  Eigen::VectorXd x;
  int iterations = 0;   // phase 1 + phase 2
  int pivots = 0;
};

/// Two-phase dense revised simplex with a Bland's-rule fallback engaged
/// after a degenerate-pivot streak.
LpSolution solve_lp(const LpProblem& prob, const SimplexOptions& opts = {});

struct SolverStats {
  int iterations = 0;
  int pivots = 0;
};

struct LpResult {
  double value = 0.0;
  double raw_cost = 0.0;
  std::vector<WeightMatrix> weights;  // one per time step, possibly fractional
  CostBreakdown decomposition;
  SolverStats stats;
};

/// LP relaxation metric: lower bound on the exact metric and itself a metric.
LpResult lp_metric(const TrajectorySet& x, const TrajectorySet& y,
                   const MetricParams& params, const SimplexOptions& opts = {});

/// Plain-text dump (objective row, constraint rows, bounds) for external
/// cross-checking; format documented in the README.
std::string dump_lp(const LpProblem& prob);

}  // namespace trajmetric
