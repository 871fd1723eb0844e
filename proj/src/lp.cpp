#include "trajmetric/lp.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace trajmetric {

LpProblem build_lp(const TrajectorySet& x, const TrajectorySet& y,
                   const MetricParams& params) {
  require_compatible(x, y);
  params.validate();
  const int n_x = x.size();
  const int n_y = y.size();
  const int T = x.window;

  LpProblem prob;
  prob.n_x = n_x;
  prob.n_y = n_y;
  prob.window = T;
  prob.num_vars = T * (n_x + 1) * (n_y + 1) + (T - 1) * (1 + n_x * n_y);
  prob.objective = Eigen::VectorXd::Zero(prob.num_vars);

  const double gp2 = 0.5 * std::pow(params.gamma, params.p);
  for (int k = 1; k <= T; ++k) {
    const CostMatrix d = cost_matrix(x, y, k, params);
    for (int i = 1; i <= n_x + 1; ++i)
      for (int j = 1; j <= n_y + 1; ++j)
        prob.objective(prob.w_index(k, i, j)) = d(i - 1, j - 1);
  }
  for (int k = 1; k <= T - 1; ++k) prob.objective(prob.e_index(k)) = gp2;

  for (int k = 1; k <= T; ++k) {
    // column sums over real columns
    for (int j = 1; j <= n_y; ++j) {
      LpProblem::Row row;
      for (int i = 1; i <= n_x + 1; ++i)
        row.coeffs.emplace_back(prob.w_index(k, i, j), 1.0);
      row.sense = LpProblem::Sense::kEq;
      row.rhs = 1.0;
      prob.rows.push_back(std::move(row));
    }
    // row sums over real rows
    for (int i = 1; i <= n_x; ++i) {
      LpProblem::Row row;
      for (int j = 1; j <= n_y + 1; ++j)
        row.coeffs.emplace_back(prob.w_index(k, i, j), 1.0);
      row.sense = LpProblem::Sense::kEq;
      row.rhs = 1.0;
      prob.rows.push_back(std::move(row));
    }
    // zero corner
    LpProblem::Row corner;
    corner.coeffs.emplace_back(prob.w_index(k, n_x + 1, n_y + 1), 1.0);
    corner.sense = LpProblem::Sense::kEq;
    corner.rhs = 0.0;
    prob.rows.push_back(std::move(corner));
  }

  for (int k = 1; k <= T - 1; ++k) {
    // sum H^k - e^k <= 0
    LpProblem::Row erow;
    for (int i = 1; i <= n_x; ++i)
      for (int j = 1; j <= n_y; ++j)
        erow.coeffs.emplace_back(prob.h_index(k, i, j), 1.0);
    erow.coeffs.emplace_back(prob.e_index(k), -1.0);
    erow.sense = LpProblem::Sense::kLe;
    erow.rhs = 0.0;
    prob.rows.push_back(std::move(erow));
    // +-(W^k - W^{k+1}) - H^k <= 0
    for (int i = 1; i <= n_x; ++i) {
      for (int j = 1; j <= n_y; ++j) {
        for (int sgn : {+1, -1}) {
          LpProblem::Row row;
          row.coeffs.emplace_back(prob.w_index(k, i, j), sgn * 1.0);
          row.coeffs.emplace_back(prob.w_index(k + 1, i, j), -sgn * 1.0);
          row.coeffs.emplace_back(prob.h_index(k, i, j), -1.0);
          row.sense = LpProblem::Sense::kLe;
          row.rhs = 0.0;
          prob.rows.push_back(std::move(row));
        }
      }
    }
  }
  return prob;
}

LpResult lp_metric(const TrajectorySet& x, const TrajectorySet& y,
                   const MetricParams& params, const SimplexOptions& opts) {
  const LpProblem prob = build_lp(x, y, params);
  const LpSolution sol = solve_lp(prob, opts);

  LpResult res;
  res.raw_cost = std::max(0.0, sol.objective);
  res.value = std::pow(res.raw_cost, 1.0 / params.p);
  res.stats.iterations = sol.iterations;
  res.stats.pivots = sol.pivots;
  res.weights.reserve(static_cast<size_t>(prob.window));
  for (int k = 1; k <= prob.window; ++k) {
    WeightMatrix w(prob.n_x + 1, prob.n_y + 1);
    for (int i = 1; i <= prob.n_x + 1; ++i)
      for (int j = 1; j <= prob.n_y + 1; ++j)
        w(i - 1, j - 1) = sol.x(prob.w_index(k, i, j));
    res.weights.push_back(std::move(w));
  }
  res.decomposition = decompose(res.weights, x, y, params);
  return res;
}

std::string dump_lp(const LpProblem& prob) {
  std::ostringstream oss;
  oss << std::setprecision(17);
  oss << "minimize\n ";
  for (int v = 0; v < prob.num_vars; ++v) {
    if (prob.objective(v) != 0.0) oss << " " << prob.objective(v) << " x" << v;
  }
  oss << "\nsubject to\n";
  for (size_t r = 0; r < prob.rows.size(); ++r) {
    const auto& row = prob.rows[r];
    oss << " r" << r << ":";
    for (const auto& [v, a] : row.coeffs) oss << " " << a << " x" << v;
    oss << (row.sense == LpProblem::Sense::kEq ? " = " : " <= ") << row.rhs << "\n";
  }
  oss << "bounds\n x" << 0 << " .. x" << (prob.num_vars - 1) << " >= 0\n";
  return oss.str();
}

}  // namespace trajmetric
