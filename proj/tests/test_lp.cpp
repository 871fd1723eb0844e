#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "common.hpp"
#include "trajmetric/exact.hpp"
#include "trajmetric/lp.hpp"

using namespace trajmetric;
using namespace trajmetric::testing;

namespace {

MetricParams figure_params() {
  MetricParams p;
  p.c = 5.0;
  p.gamma = 2.0;
  p.p = 1.0;
  return p;
}

}  // namespace

TEST_CASE("simplex solves a tiny known LP") {
  // min -x0 - 2 x1  s.t.  x0 + x1 <= 4, x1 <= 3, x >= 0  -> (1, 3), obj -7
  LpProblem prob;
  prob.num_vars = 2;
  prob.objective = Eigen::VectorXd(2);
  prob.objective << -1.0, -2.0;
  prob.rows.push_back({{{0, 1.0}, {1, 1.0}}, LpProblem::Sense::kLe, 4.0});
  prob.rows.push_back({{{1, 1.0}}, LpProblem::Sense::kLe, 3.0});
  const LpSolution sol = solve_lp(prob);
  CHECK(sol.objective == doctest::Approx(-7.0).epsilon(1e-9));
  CHECK(sol.x(0) == doctest::Approx(1.0));
  CHECK(sol.x(1) == doctest::Approx(3.0));
}

TEST_CASE("simplex handles equality rows needing artificials") {
  // min x0 + x1  s.t.  x0 + 2 x1 = 4, x0 - x1 = 1  -> (2, 1), obj 3
  LpProblem prob;
  prob.num_vars = 2;
  prob.objective = Eigen::VectorXd(2);
  prob.objective << 1.0, 1.0;
  prob.rows.push_back({{{0, 1.0}, {1, 2.0}}, LpProblem::Sense::kEq, 4.0});
  prob.rows.push_back({{{0, 1.0}, {1, -1.0}}, LpProblem::Sense::kEq, 1.0});
  const LpSolution sol = solve_lp(prob);
  CHECK(sol.objective == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("simplex reports infeasibility as a solver error") {
  LpProblem prob;
  prob.num_vars = 1;
  prob.objective = Eigen::VectorXd::Ones(1);
  prob.rows.push_back({{{0, 1.0}}, LpProblem::Sense::kEq, 2.0});
  prob.rows.push_back({{{0, 1.0}}, LpProblem::Sense::kEq, 3.0});
  CHECK_THROWS_AS(solve_lp(prob), SolverError);
}

TEST_CASE("simplex detects unbounded problems") {
  LpProblem prob;
  prob.num_vars = 1;
  prob.objective = Eigen::VectorXd(1);
  prob.objective << -1.0;
  prob.rows.push_back({{{0, -1.0}}, LpProblem::Sense::kLe, 0.0});
  CHECK_THROWS_AS(solve_lp(prob), SolverError);
}

TEST_CASE("build_lp variable count") {
  const TrajectorySet x = set1d(2, {traj1d(1, {0, 0})});
  const TrajectorySet y = set1d(2, {traj1d(1, {1, 1})});
  const LpProblem prob = build_lp(x, y, figure_params());
  // T(n_x+1)(n_y+1) + (T-1)(1 + n_x n_y) = 2*4 + 1*2
  CHECK(prob.num_vars == 10);
  for (const auto& row : prob.rows)
    for (const auto& [v, a] : row.coeffs) {
      CHECK(v >= 0);
      CHECK(v < prob.num_vars);
    }
}

TEST_CASE("T=1 problem has no switching variables") {
  const TrajectorySet x = set1d(1, {traj1d(1, {0})});
  const TrajectorySet y = set1d(1, {traj1d(1, {1})});
  const LpProblem prob = build_lp(x, y, figure_params());
  CHECK(prob.num_vars == 4);
}

TEST_CASE("empty Y forces the all-miss optimum") {
  const TrajectorySet x = set1d(3, {traj1d(1, {0, 0, 0})});
  const TrajectorySet y = set1d(3, {});
  const LpResult r = lp_metric(x, y, figure_params());
  CHECK(r.raw_cost == doctest::Approx(3 * 2.5).epsilon(1e-9));
}

TEST_CASE("identity gives zero") {
  const TrajectorySet s = set1d(3, {traj1d(1, {0, 1, 2}), traj1d(2, {5, 5})});
  const LpResult r = lp_metric(s, s, figure_params());
  CHECK(r.value == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("cut-off saturation for far singletons") {
  const TrajectorySet x = set1d(1, {traj1d(1, {0})});
  const TrajectorySet y = set1d(1, {traj1d(1, {1e6})});
  const LpResult r = lp_metric(x, y, figure_params());
  CHECK(r.value == doctest::Approx(5.0).epsilon(1e-9));
}

TEST_CASE("figure scenarios are tight for the LP") {
  const MetricParams params = figure_params();
  const std::vector<std::pair<ScenarioPair, double>> cases = {
      {scenario_close_pair(0.1), 0.5},
      {scenario_early_death(0.1), 2.9},
      {scenario_track_break(0.1), 2.5},
      {scenario_track_break_doubled(0.1), 5.0},
      {scenario_full_swap(0.1), 4.8},
      {scenario_half_swap(0.1), 2.8},
  };
  for (const auto& [pair, expected] : cases) {
    const LpResult r = lp_metric(pair.x, pair.y, params);
    CHECK(r.value == doctest::Approx(expected).epsilon(1e-9));
  }
}

TEST_CASE("LP lower-bounds the exact metric and weights stay feasible") {
  std::mt19937_64 rng(5150);
  const MetricParams params = figure_params();
  for (int it = 0; it < 60; ++it) {
    const int T = 1 + static_cast<int>(rng() % 4);
    const TrajectorySet x = random_set(rng, T, 2);
    const TrajectorySet y = random_set(rng, T, 2);
    const ExactResult ex = exact_metric(x, y, params);
    const LpResult lp = lp_metric(x, y, params);
    CHECK(lp.value <= ex.value + 1e-8);
    for (const auto& w : lp.weights) CHECK(weight_violation(w) <= 1e-9);
    CHECK(lp.decomposition.total() ==
          doctest::Approx(lp.raw_cost).epsilon(1e-9));
  }
}

TEST_CASE("lp dump mentions every variable bound and row") {
  const TrajectorySet x = set1d(2, {traj1d(1, {0, 0})});
  const TrajectorySet y = set1d(2, {traj1d(1, {1, 1})});
  const LpProblem prob = build_lp(x, y, figure_params());
  const std::string dump = dump_lp(prob);
  CHECK(dump.find("minimize") != std::string::npos);
  CHECK(dump.find("subject to") != std::string::npos);
  CHECK(dump.find("r" + std::to_string(prob.rows.size() - 1)) != std::string::npos);
  CHECK(dump.find("x9 >= 0") != std::string::npos);
}
