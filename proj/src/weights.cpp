#include "trajmetric/weights.hpp"

#include <cmath>

namespace trajmetric {

WeightMatrix pi_to_W(const AssignmentVector& pi, int n_y) {
  const int n_x = static_cast<int>(pi.size());
  if (!assignment_valid(pi, n_y)) throw ValidationError("invalid assignment vector");
  WeightMatrix w = WeightMatrix::Zero(n_x + 1, n_y + 1);
  std::vector<bool> hit(static_cast<size_t>(n_y), false);
  for (int i = 0; i < n_x; ++i) {
    const int j = pi[static_cast<size_t>(i)];
    if (j == 0) {
      w(i, n_y) = 1.0;
    } else {
      w(i, j - 1) = 1.0;
      hit[static_cast<size_t>(j - 1)] = true;
    }
  }
  for (int j = 0; j < n_y; ++j) {
    if (!hit[static_cast<size_t>(j)]) w(n_x, j) = 1.0;
  }
  return w;
}

AssignmentVector W_to_pi(const WeightMatrix& w) {
  const int n_x = static_cast<int>(w.rows()) - 1;
  const int n_y = static_cast<int>(w.cols()) - 1;
  for (int i = 0; i <= n_x; ++i) {
    for (int j = 0; j <= n_y; ++j) {
      if (w(i, j) != 0.0 && w(i, j) != 1.0)
        throw ValidationError("weight matrix is not binary");
    }
  }
  if (weight_violation(w) > 0.0)
    throw ValidationError("weight matrix is not feasible");
  AssignmentVector pi(static_cast<size_t>(n_x), 0);
  for (int i = 0; i < n_x; ++i) {
    for (int j = 0; j < n_y; ++j) {
      if (w(i, j) == 1.0) pi[static_cast<size_t>(i)] = j + 1;
    }
  }
  return pi;
}

double weight_violation(const WeightMatrix& w) {
  const int n_x = static_cast<int>(w.rows()) - 1;
  const int n_y = static_cast<int>(w.cols()) - 1;
  double worst = 0.0;
  for (int i = 0; i < n_x; ++i)
    worst = std::max(worst, std::abs(w.row(i).sum() - 1.0));
  for (int j = 0; j < n_y; ++j)
    worst = std::max(worst, std::abs(w.col(j).sum() - 1.0));
  worst = std::max(worst, std::abs(w(n_x, n_y)));
  worst = std::max(worst, std::max(0.0, -w.minCoeff()));
  return worst;
}

CostBreakdown decompose(const std::vector<WeightMatrix>& weights,
                        const TrajectorySet& x, const TrajectorySet& y,
                        const MetricParams& params) {
  require_compatible(x, y);
  if (static_cast<int>(weights.size()) != x.window)
    throw ValidationError("weight sequence length does not match window");
  const int n_x = x.size();
  const int n_y = y.size();
  CostBreakdown out;
  const double gp2 = 0.5 * std::pow(params.gamma, params.p);
  for (int k = 1; k <= x.window; ++k) {
    const WeightMatrix& w = weights[static_cast<size_t>(k - 1)];
    if (w.rows() != n_x + 1 || w.cols() != n_y + 1)
      throw ValidationError("weight matrix has wrong shape");
    if (weight_violation(w) > 1e-6)
      throw ValidationError("infeasible weight matrix in decomposition");
    const CostMatrix d = cost_matrix(x, y, k, params);
    std::vector<bool> x_alive(static_cast<size_t>(n_x));
    std::vector<bool> y_alive(static_cast<size_t>(n_y));
    for (int i = 0; i < n_x; ++i)
      x_alive[static_cast<size_t>(i)] = tau(x.trajectories[static_cast<size_t>(i)], k, x.window).has_value();
    for (int j = 0; j < n_y; ++j)
      y_alive[static_cast<size_t>(j)] = tau(y.trajectories[static_cast<size_t>(j)], k, y.window).has_value();
    for (int i = 0; i <= n_x; ++i) {
      const bool xi = (i < n_x) && x_alive[static_cast<size_t>(i)];
      for (int j = 0; j <= n_y; ++j) {
        const bool yj = (j < n_y) && y_alive[static_cast<size_t>(j)];
        const double mass = d(i, j) * w(i, j);
        if (mass == 0.0) continue;
        if (xi && yj) {
          out.localization += mass;
        } else if (xi) {
          out.missed += mass;  // live target matched to a dead or dummy column
        } else if (yj) {
          out.false_ += mass;
        }
        // both sides empty carries zero cost
      }
    }
    if (k < x.window) {
      const WeightMatrix& wn = weights[static_cast<size_t>(k)];
      for (int i = 0; i < n_x; ++i)
        for (int j = 0; j < n_y; ++j)
          out.switching += gp2 * std::abs(w(i, j) - wn(i, j));
    }
  }
  return out;
}

double raw_objective(const std::vector<WeightMatrix>& weights,
                     const TrajectorySet& x, const TrajectorySet& y,
                     const MetricParams& params) {
  if (static_cast<int>(weights.size()) != x.window)
    throw ValidationError("weight sequence length does not match window");
  const int n_x = x.size();
  const int n_y = y.size();
  const double gp2 = 0.5 * std::pow(params.gamma, params.p);
  double total = 0.0;
  for (int k = 1; k <= x.window; ++k) {
    const CostMatrix d = cost_matrix(x, y, k, params);
    total += d.cwiseProduct(weights[static_cast<size_t>(k - 1)]).sum();
    if (k < x.window) {
      const WeightMatrix& w = weights[static_cast<size_t>(k - 1)];
      const WeightMatrix& wn = weights[static_cast<size_t>(k)];
      for (int i = 0; i < n_x; ++i)
        for (int j = 0; j < n_y; ++j)
          total += gp2 * std::abs(w(i, j) - wn(i, j));
    }
  }
  return total;
}

}  // namespace trajmetric
