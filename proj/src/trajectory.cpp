#include "trajmetric/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace trajmetric {

void MetricParams::validate() const {
  if (!(c > 0.0)) throw ValidationError("cut-off c must be positive");
  if (!(gamma > 0.0)) throw ValidationError("switch penalty gamma must be positive");
  if (!(p >= 1.0) || !std::isfinite(p))
    throw ValidationError("exponent p must satisfy 1 <= p < inf");
}

PointSetAtTime tau(const Trajectory& x, int k, int window) {
  if (k < 1 || k > window) {
    throw ValidationError("time step " + std::to_string(k) + " outside window [1, " +
                          std::to_string(window) + "]");
  }
  if (k >= x.start && k <= x.last_step()) {
    return x.states[static_cast<size_t>(k - x.start)];
  }
  return std::nullopt;
}

double base_distance(const PointSetAtTime& x, const PointSetAtTime& y,
                     const MetricParams& params) {
  if (x && y) {
    if (x->size() != y->size()) throw ValidationError("state dimension mismatch");
    return std::min(params.c, params.base_distance(*x, *y));
  }
  if (!x && !y) return 0.0;
  return params.c / std::pow(2.0, 1.0 / params.p);
}

std::vector<std::string> validate_set(const TrajectorySet& s) {
  std::vector<std::string> out;
  if (s.window < 1) out.push_back("window T must be >= 1");
  if (s.state_dim < 1) out.push_back("state_dim must be >= 1");
  for (int i = 0; i < s.size(); ++i) {
    const Trajectory& t = s.trajectories[static_cast<size_t>(i)];
    const std::string tag = "trajectory " + std::to_string(i + 1);
    if (t.states.empty()) {
      out.push_back(tag + ": empty state list (nu must be >= 1)");
      continue;
    }
    if (t.start < 1) out.push_back(tag + ": start must be >= 1");
    if (t.start > s.window) out.push_back(tag + ": starts after window end");
    if (t.last_step() > s.window) out.push_back(tag + ": exceeds window");
    for (const auto& x : t.states) {
      if (x.size() != s.state_dim) {
        out.push_back(tag + ": state_dim mismatch (" + std::to_string(x.size()) +
                      " vs " + std::to_string(s.state_dim) + ")");
        break;
      }
    }
  }
  return out;
}

void require_valid(const TrajectorySet& s) {
  auto violations = validate_set(s);
  if (!violations.empty()) {
    std::ostringstream oss;
    oss << "invalid trajectory set:";
    for (const auto& v : violations) oss << "\n  " << v;
    throw ValidationError(oss.str());
  }
}

void require_compatible(const TrajectorySet& x, const TrajectorySet& y) {
  require_valid(x);
  require_valid(y);
  if (x.window != y.window)
    throw ValidationError("trajectory sets have different windows");
  if (x.state_dim != y.state_dim)
    throw ValidationError("trajectory sets have different state dimensions");
}

namespace {

bool trajectories_equal(const Trajectory& a, const Trajectory& b, double tol) {
  if (a.start != b.start || a.states.size() != b.states.size()) return false;
  for (size_t i = 0; i < a.states.size(); ++i) {
    if (a.states[i].size() != b.states[i].size()) return false;
    if ((a.states[i] - b.states[i]).lpNorm<Eigen::Infinity>() > tol) return false;
  }
  return true;
}

}  // namespace

bool sets_equal(const TrajectorySet& x, const TrajectorySet& y, double tol) {
  if (x.size() != y.size() || x.window != y.window) return false;
  std::vector<bool> used(static_cast<size_t>(y.size()), false);
  for (const auto& a : x.trajectories) {
    bool found = false;
    for (size_t j = 0; j < used.size(); ++j) {
      if (!used[j] && trajectories_equal(a, y.trajectories[j], tol)) {
        used[j] = true;
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace trajmetric
