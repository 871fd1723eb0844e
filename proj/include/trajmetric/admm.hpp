#pragma once

#include <Eigen/Dense>
#include <optional>
#include <utility>
#include <vector>

#include "trajmetric/lp.hpp"
#include "trajmetric/weights.hpp"

namespace trajmetric {

/// Projections onto the relaxed association polytope: row/column sums one,
/// zero corner, nonnegative entries.
class WeightPolytope {
 public:
  WeightPolytope(int n_x, int n_y);

  /// Euclidean projection onto the affine (row/column/corner) equations only.
  Eigen::MatrixXd project_affine(const Eigen::MatrixXd& m) const;

  /// Projection onto the full polytope by alternating between the affine
  /// equations and the nonnegative orthant (with Dykstra corrections).
  Eigen::MatrixXd project(const Eigen::MatrixXd& m, double tol = 1e-10,
                          int max_sweeps = 400) const;

  int n_x() const { return n_x_; }
  int n_y() const { return n_y_; }

 private:
  int n_x_, n_y_;
  Eigen::LDLT<Eigen::MatrixXd> gram_;
};

struct AdmmConfig {
  double rho = 2.0;
  int max_admm_iters = 100;
  int max_qp_iters = 5;
  double residual_factor = 0.5;  // threshold factor on sqrt((n_x+1)(n_y+1))

  void validate() const;
};

/// One consensus block sub-problem: linear weight cost, optional switching
/// coupling to the next-step copy, and proximal terms from the consensus
/// variables.
struct BlockProblem {
  const Eigen::MatrixXd* lin_w = nullptr;  // D^k
  double switch_weight = 0.0;              // gamma^p / 2
  bool has_w_prox = false;
  Eigen::MatrixXd w_center;                // Z^k - alpha^k / rho
  bool has_what = false;
  Eigen::MatrixXd what_center;             // Z^{k+1} - beta^{k+1} / rho
  double rho = 2.0;
};

struct BlockVars {
  Eigen::MatrixXd w;
  Eigen::MatrixXd what;  // empty when the block has no next-step copy
  Eigen::MatrixXd dual;  // n_x x n_y multiplier of the coupling term; may be
                         // empty, and is carried across solves as a warm start
  Eigen::MatrixXd h;     // n_x x n_y switching magnitudes
  double e = 0.0;
};

/// Approximate block minimizer: a primal-dual splitting loop whose prox steps
/// (soft clip for the coupling term, scaled polytope projection for the rest)
/// are exact, so its fixed points are the true block minima.  Returns the
/// best feasible iterate seen; never increases the block objective relative
/// to the start point.
BlockVars qp_block_solve(const BlockProblem& prob, BlockVars start,
                         int max_qp_iters, const WeightPolytope& poly);

/// Iterate state of the consensus solver; time is 0-based, consensus copies
/// exist for steps 1..T-1.
struct AdmmState {
  std::vector<Eigen::MatrixXd> w;      // size T
  std::vector<Eigen::MatrixXd> what;   // size T, index 0 unused
  std::vector<Eigen::MatrixXd> z;      // size T, index 0 unused
  std::vector<Eigen::MatrixXd> alpha;  // size T, index 0 unused
  std::vector<Eigen::MatrixXd> beta;   // size T, index 0 unused
  std::vector<Eigen::MatrixXd> z_prev; // empty before the first z update
  double rho = 2.0;
  int iteration = 0;
};

/// Primal residual ||[W - Z; What - Z]|| and dual residual rho ||Z - Z_prev||.
/// The dual residual is +inf when no previous consensus snapshot exists.
std::pair<double, double> residuals(const AdmmState& state);

struct AdmmResult {
  double value = 0.0;
  double raw_cost = 0.0;
  std::vector<WeightMatrix> weights;
  CostBreakdown decomposition;
  int iterations = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  bool converged = false;
};

/// LP relaxation metric computed by consensus ADMM; per-iteration cost is
/// linear in the window length.  The reported value is the objective of a
/// feasibility-projected copy of the best iterate.
AdmmResult admm_metric(const TrajectorySet& x, const TrajectorySet& y,
                       const MetricParams& params, const AdmmConfig& config = {},
                       const AdmmState* warm_start = nullptr);

}  // namespace trajmetric
