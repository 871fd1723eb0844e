#include "trajmetric/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace trajmetric {

bool assignment_valid(const AssignmentVector& pi, int n_y) {
  std::vector<bool> used(static_cast<size_t>(n_y) + 1, false);
  for (int v : pi) {
    if (v < 0 || v > n_y) return false;
    if (v > 0) {
      if (used[static_cast<size_t>(v)]) return false;
      used[static_cast<size_t>(v)] = true;
    }
  }
  return true;
}

std::uint64_t count_assignments(int n_x, int n_y, std::uint64_t limit) {
  // sum over k matched pairs: C(n_x,k) * C(n_y,k) * k!
  std::uint64_t total = 0;
  const int kmax = std::min(n_x, n_y);
  long double term = 1.0L;  // k = 0
  for (int k = 0; k <= kmax; ++k) {
    if (k > 0) {
      term *= static_cast<long double>(n_x - k + 1) *
              static_cast<long double>(n_y - k + 1) / static_cast<long double>(k);
    }
    if (term > static_cast<long double>(limit) ||
        static_cast<long double>(total) + term > static_cast<long double>(limit)) {
      return limit;
    }
    total += static_cast<std::uint64_t>(term + 0.5L);
  }
  return total;
}

namespace {

void enumerate_rec(int pos, int n_x, int n_y, AssignmentVector& current,
                   std::vector<bool>& used, std::vector<AssignmentVector>& out) {
  if (pos == n_x) {
    out.push_back(current);
    return;
  }
  for (int v = 0; v <= n_y; ++v) {
    if (v > 0 && used[static_cast<size_t>(v)]) continue;
    current[static_cast<size_t>(pos)] = v;
    if (v > 0) used[static_cast<size_t>(v)] = true;
    enumerate_rec(pos + 1, n_x, n_y, current, used, out);
    if (v > 0) used[static_cast<size_t>(v)] = false;
  }
}

}  // namespace

std::vector<AssignmentVector> enumerate_assignments(int n_x, int n_y,
                                                    std::uint64_t cap) {
  if (n_x < 0 || n_y < 0) throw ValidationError("negative set size");
  const std::uint64_t count = count_assignments(n_x, n_y, cap + 1);
  if (count > cap) {
    throw CapExceededError("assignment state space too large (> " +
                           std::to_string(cap) + " vectors); use LP/ADMM solver");
  }
  std::vector<AssignmentVector> out;
  out.reserve(static_cast<size_t>(count));
  AssignmentVector current(static_cast<size_t>(n_x), 0);
  std::vector<bool> used(static_cast<size_t>(n_y) + 1, false);
  enumerate_rec(0, n_x, n_y, current, used, out);
  return out;
}

CostMatrix cost_matrix(const TrajectorySet& x, const TrajectorySet& y, int k,
                       const MetricParams& params) {
  const int n_x = x.size();
  const int n_y = y.size();
  CostMatrix d(n_x + 1, n_y + 1);
  std::vector<PointSetAtTime> xs(static_cast<size_t>(n_x));
  std::vector<PointSetAtTime> ys(static_cast<size_t>(n_y));
  for (int i = 0; i < n_x; ++i) xs[static_cast<size_t>(i)] = tau(x.trajectories[static_cast<size_t>(i)], k, x.window);
  for (int j = 0; j < n_y; ++j) ys[static_cast<size_t>(j)] = tau(y.trajectories[static_cast<size_t>(j)], k, y.window);
  const PointSetAtTime empty;
  for (int i = 0; i <= n_x; ++i) {
    const PointSetAtTime& xi = (i < n_x) ? xs[static_cast<size_t>(i)] : empty;
    for (int j = 0; j <= n_y; ++j) {
      const PointSetAtTime& yj = (j < n_y) ? ys[static_cast<size_t>(j)] : empty;
      d(i, j) = std::pow(base_distance(xi, yj, params), params.p);
    }
  }
  return d;
}

double loc_cost(const CostMatrix& d, const AssignmentVector& pi) {
  const int n_x = static_cast<int>(d.rows()) - 1;
  const int n_y = static_cast<int>(d.cols()) - 1;
  if (static_cast<int>(pi.size()) != n_x)
    throw ValidationError("assignment length does not match cost matrix");
  double total = 0.0;
  std::vector<bool> hit(static_cast<size_t>(n_y), false);
  for (int i = 0; i < n_x; ++i) {
    const int j = pi[static_cast<size_t>(i)];
    if (j == 0) {
      total += d(i, n_y);
    } else {
      total += d(i, j - 1);
      hit[static_cast<size_t>(j - 1)] = true;
    }
  }
  for (int j = 0; j < n_y; ++j) {
    if (!hit[static_cast<size_t>(j)]) total += d(n_x, j);
  }
  return total;
}

double switch_cost(const AssignmentVector& a, const AssignmentVector& b,
                   const MetricParams& params) {
  if (a.size() != b.size()) throw ValidationError("assignment length mismatch");
  double switches = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == b[i]) continue;
    switches += (a[i] != 0 && b[i] != 0) ? 1.0 : 0.5;
  }
  return std::pow(params.gamma, params.p) * switches;
}

}  // namespace trajmetric
