#pragma once

#include <random>
#include <vector>

#include "trajmetric/trajectory.hpp"

namespace trajmetric::testing {

inline Trajectory traj1d(int start, std::vector<double> values) {
  Trajectory t;
  t.start = start;
  for (double v : values) {
    Eigen::VectorXd s(1);
    s(0) = v;
    t.states.push_back(s);
  }
  return t;
}

inline TrajectorySet set1d(int window, std::vector<Trajectory> trajs) {
  TrajectorySet s;
  s.window = window;
  s.state_dim = 1;
  s.trajectories = std::move(trajs);
  return s;
}

// Six reference scenarios with 1-D states and offset delta between the two
// sets.  With p=1, c=5, gamma=2, delta=0.1 their metric values are known in
// closed form (see the acceptance suite).
struct ScenarioPair {
  TrajectorySet x, y;
};

inline ScenarioPair scenario_close_pair(double delta) {  // value 5*delta
  return {set1d(5, {traj1d(1, {0, 0, 0, 0, 0})}),
          set1d(5, {traj1d(1, {delta, delta, delta, delta, delta})})};
}

inline ScenarioPair scenario_early_death(double delta) {  // 4*delta + c/2
  return {set1d(5, {traj1d(1, {0, 0, 0, 0, 0})}),
          set1d(5, {traj1d(1, {delta, delta, delta, delta})})};
}

inline ScenarioPair scenario_track_break(double delta) {  // 5*delta + gamma
  return {set1d(5, {traj1d(1, {0, 0, 0, 0, 0})}),
          set1d(5, {traj1d(1, {delta, delta, delta}), traj1d(4, {delta, delta})})};
}

inline ScenarioPair scenario_track_break_doubled(double delta) {
  // two far-separated copies of scenario_track_break with the roles swapped:
  // 10*delta + 2*gamma
  const double far = 1000.0;
  return {set1d(5, {traj1d(1, {0, 0, 0, 0, 0}),
                    traj1d(1, {far + delta, far + delta, far + delta}),
                    traj1d(4, {far + delta, far + delta})}),
          set1d(5, {traj1d(1, {delta, delta, delta}), traj1d(4, {delta, delta}),
                    traj1d(1, {far, far, far, far, far})})};
}

inline ScenarioPair scenario_full_swap(double delta) {  // 8*delta + 2*gamma
  const double far = 1000.0;
  return {set1d(4, {traj1d(1, {0, 0, 0, 0}),
                    traj1d(1, {far + 2 * delta, far + 2 * delta, far + 2 * delta,
                               far + 2 * delta})}),
          set1d(4, {traj1d(1, {delta, delta, far + delta, far + delta}),
                    traj1d(1, {far + delta, far + delta, delta, delta})})};
}

inline ScenarioPair scenario_half_swap(double delta) {  // 8*delta + gamma
  const double far = 1000.0;
  return {set1d(4, {traj1d(1, {0, 0, 0, 0}), traj1d(1, {far, far, far, far})}),
          set1d(4, {traj1d(1, {delta, delta, delta, delta}),
                    traj1d(1, {far + delta, far + delta}),
                    traj1d(3, {far + delta, far + delta})})};
}

/// Random trajectory set inside a window: up to max_n trajectories, random
/// start and length, states uniform in [-range, range]^dim.
inline TrajectorySet random_set(std::mt19937_64& rng, int window, int max_n,
                                int dim = 1, double range = 3.0) {
  std::uniform_int_distribution<int> n_dist(0, max_n);
  std::uniform_int_distribution<int> start_dist(1, window);
  std::uniform_real_distribution<double> coord(-range, range);
  TrajectorySet s;
  s.window = window;
  s.state_dim = dim;
  const int n = n_dist(rng);
  for (int t = 0; t < n; ++t) {
    Trajectory traj;
    traj.start = start_dist(rng);
    std::uniform_int_distribution<int> len_dist(1, window - traj.start + 1);
    const int len = len_dist(rng);
    for (int k = 0; k < len; ++k) {
      Eigen::VectorXd v(dim);
      for (int d = 0; d < dim; ++d) v(d) = coord(rng);
      traj.states.push_back(v);
    }
    s.trajectories.push_back(std::move(traj));
  }
  return s;
}

}  // namespace trajmetric::testing
