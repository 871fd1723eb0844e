#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <vector>

#include "trajmetric/errors.hpp"
#include "trajmetric/lp.hpp"

namespace trajmetric {

namespace {

using SparseCol = std::vector<std::pair<int, double>>;

struct Tableau {
  int m = 0;                    // rows
  int n = 0;                    // columns incl. slacks and artificials
  int first_artificial = 0;     // columns >= this are artificials
  std::vector<SparseCol> cols;
  Eigen::VectorXd b;
  Eigen::VectorXd phase2_cost;
  std::vector<int> basis;       // variable per row
  std::vector<char> in_basis;
  Eigen::MatrixXd binv;
  Eigen::VectorXd xb;
  int pivots = 0;

  Eigen::VectorXd col_dense(int j) const {
    Eigen::VectorXd a = Eigen::VectorXd::Zero(m);
    for (const auto& [r, v] : cols[static_cast<size_t>(j)]) a(r) = v;
    return a;
  }

  void refactor() {
    Eigen::MatrixXd basis_mat(m, m);
    for (int r = 0; r < m; ++r) basis_mat.col(r) = col_dense(basis[static_cast<size_t>(r)]);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(basis_mat);
    if (!lu.isInvertible()) throw SolverError("simplex basis became singular");
    binv = lu.inverse();
    xb = binv * b;
    for (int r = 0; r < m; ++r) xb(r) = std::max(xb(r), 0.0);
  }
};

// One simplex phase over the given cost vector.  Columns with allow[j] ==
// false may not enter the basis.  Returns iterations used.
int run_phase(Tableau& t, const Eigen::VectorXd& cost, const std::vector<char>& allow,
              const SimplexOptions& opts, int max_iters) {
  int iters = 0;
  int degenerate_streak = 0;
  int bland_until = 0;
  int since_refactor = 0;

  while (true) {
    if (++iters > max_iters)
      throw SolverError("simplex iteration cap exceeded (bug signal)");
    const bool bland = iters <= bland_until;

    // pricing
    Eigen::VectorXd cb(t.m);
    for (int r = 0; r < t.m; ++r) cb(r) = cost(t.basis[static_cast<size_t>(r)]);
    const Eigen::VectorXd y = t.binv.transpose() * cb;

    int entering = -1;
    double best_rc = -opts.cost_tol;
    for (int j = 0; j < t.n; ++j) {
      if (t.in_basis[static_cast<size_t>(j)] || !allow[static_cast<size_t>(j)]) continue;
      double rc = cost(j);
      for (const auto& [r, v] : t.cols[static_cast<size_t>(j)]) rc -= y(r) * v;
      if (rc < best_rc) {
        best_rc = rc;
        entering = j;
        if (bland) break;  // first improving index
      }
    }
    if (entering < 0) return iters;  // optimal

    const Eigen::VectorXd w = t.binv * t.col_dense(entering);

    // ratio test
    double theta = std::numeric_limits<double>::infinity();
    int leave = -1;
    for (int r = 0; r < t.m; ++r) {
      if (w(r) <= opts.pivot_tol) continue;
      const double ratio = t.xb(r) / w(r);
      if (ratio < theta - 1e-10) {
        theta = ratio;
        leave = r;
      } else if (ratio < theta + 1e-10 && leave >= 0) {
        if (bland) {
          if (t.basis[static_cast<size_t>(r)] < t.basis[static_cast<size_t>(leave)]) leave = r;
        } else if (w(r) > w(leave)) {
          leave = r;  // prefer the larger pivot for stability
        }
      }
    }
    if (leave < 0) throw SolverError("simplex detected an unbounded direction");
    theta = std::max(theta, 0.0);

    // pivot
    t.xb -= theta * w;
    for (int r = 0; r < t.m; ++r) t.xb(r) = std::max(t.xb(r), 0.0);
    t.xb(leave) = theta;
    t.in_basis[static_cast<size_t>(t.basis[static_cast<size_t>(leave)])] = 0;
    t.in_basis[static_cast<size_t>(entering)] = 1;
    t.basis[static_cast<size_t>(leave)] = entering;
    const double piv = w(leave);
    t.binv.row(leave) /= piv;
    for (int r = 0; r < t.m; ++r) {
      if (r == leave) continue;
      const double f = w(r);
      if (f != 0.0) t.binv.row(r) -= f * t.binv.row(leave);
    }
    ++t.pivots;

    if (theta < 1e-10) {
      if (++degenerate_streak >= opts.degenerate_streak_for_bland && !bland)
        bland_until = iters + 5000;
    } else {
      degenerate_streak = 0;
    }
    if (++since_refactor >= opts.refactor_every) {
      t.refactor();
      since_refactor = 0;
    }
  }
}

}  // namespace

LpSolution solve_lp(const LpProblem& prob, const SimplexOptions& opts) {
  const int m = static_cast<int>(prob.rows.size());
  Tableau t;
  t.m = m;
  t.b = Eigen::VectorXd(m);
  t.cols.assign(static_cast<size_t>(prob.num_vars), {});

  // structural columns
  for (int r = 0; r < m; ++r) {
    const auto& row = prob.rows[static_cast<size_t>(r)];
    const double flip = (row.rhs < 0.0) ? -1.0 : 1.0;
    t.b(r) = flip * row.rhs;
    for (const auto& [v, a] : row.coeffs)
      t.cols[static_cast<size_t>(v)].emplace_back(r, flip * a);
  }
  // slack columns for inequality rows
  std::vector<int> slack_of_row(static_cast<size_t>(m), -1);
  for (int r = 0; r < m; ++r) {
    const auto& row = prob.rows[static_cast<size_t>(r)];
    if (row.sense == LpProblem::Sense::kLe) {
      const double flip = (row.rhs < 0.0) ? -1.0 : 1.0;
      slack_of_row[static_cast<size_t>(r)] = static_cast<int>(t.cols.size());
      t.cols.push_back({{r, flip * 1.0}});
    }
  }
  const int num_real = static_cast<int>(t.cols.size());
  t.first_artificial = num_real;
  // artificials where the slack cannot serve as the initial basic variable
  std::vector<int> art_of_row(static_cast<size_t>(m), -1);
  for (int r = 0; r < m; ++r) {
    const int s = slack_of_row[static_cast<size_t>(r)];
    const bool slack_ok = s >= 0 && t.cols[static_cast<size_t>(s)][0].second > 0.0;
    if (!slack_ok) {
      art_of_row[static_cast<size_t>(r)] = static_cast<int>(t.cols.size());
      t.cols.push_back({{r, 1.0}});
    }
  }
  t.n = static_cast<int>(t.cols.size());

  t.phase2_cost = Eigen::VectorXd::Zero(t.n);
  t.phase2_cost.head(prob.num_vars) = prob.objective;

  t.basis.resize(static_cast<size_t>(m));
  t.in_basis.assign(static_cast<size_t>(t.n), 0);
  for (int r = 0; r < m; ++r) {
    const int a = art_of_row[static_cast<size_t>(r)];
    t.basis[static_cast<size_t>(r)] = (a >= 0) ? a : slack_of_row[static_cast<size_t>(r)];
    t.in_basis[static_cast<size_t>(t.basis[static_cast<size_t>(r)])] = 1;
  }
  t.binv = Eigen::MatrixXd::Identity(m, m);
  t.xb = t.b;

  const int max_iters =
      opts.max_iterations > 0 ? opts.max_iterations : 200 * (m + t.n) + 10000;

  LpSolution sol;
  // phase 1: minimize the artificial mass
  bool have_artificials = false;
  for (int r = 0; r < m; ++r)
    if (art_of_row[static_cast<size_t>(r)] >= 0) have_artificials = true;
  if (have_artificials) {
    Eigen::VectorXd phase1_cost = Eigen::VectorXd::Zero(t.n);
    for (int j = t.first_artificial; j < t.n; ++j) phase1_cost(j) = 1.0;
    std::vector<char> allow(static_cast<size_t>(t.n), 1);
    sol.iterations += run_phase(t, phase1_cost, allow, opts, max_iters);
    double infeas = 0.0;
    for (int r = 0; r < m; ++r)
      if (t.basis[static_cast<size_t>(r)] >= t.first_artificial) infeas += t.xb(r);
    if (infeas > 1e-7) throw SolverError("LP infeasible (bug signal)");
  }

  // phase 2: artificials may not re-enter
  std::vector<char> allow(static_cast<size_t>(t.n), 1);
  for (int j = t.first_artificial; j < t.n; ++j) allow[static_cast<size_t>(j)] = 0;
  t.refactor();
  sol.iterations += run_phase(t, t.phase2_cost, allow, opts, max_iters);
  t.refactor();  // clean solution values

  sol.x = Eigen::VectorXd::Zero(prob.num_vars);
  for (int r = 0; r < m; ++r) {
    const int v = t.basis[static_cast<size_t>(r)];
    if (v < prob.num_vars) sol.x(v) = t.xb(r);
  }
  sol.objective = prob.objective.dot(sol.x);
  sol.pivots = t.pivots;
  return sol;
}

}  // namespace trajmetric
