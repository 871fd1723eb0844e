#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "common.hpp"
#include "trajmetric/exact.hpp"

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

TEST_CASE("identical sets give zero") {
  const MetricParams params = figure_params();
  const TrajectorySet s =
      set1d(4, {traj1d(1, {0, 1, 2}), traj1d(2, {5, 5, 5})});
  const ExactResult r = exact_metric(s, s, params);
  CHECK(r.value == 0.0);
  CHECK(r.raw_cost == 0.0);
  CHECK(r.decomposition.total() == 0.0);
}

TEST_CASE("both sets empty give zero") {
  TrajectorySet e = set1d(3, {});
  const ExactResult r = exact_metric(e, e, figure_params());
  CHECK(r.value == 0.0);
}

TEST_CASE("close pair scenario") {
  const auto [x, y] = scenario_close_pair(0.1);
  const ExactResult r = exact_metric(x, y, figure_params());
  CHECK(r.value == doctest::Approx(0.5).epsilon(1e-12));
  REQUIRE(r.per_time_assignments.size() == 5);
  for (const auto& pi : r.per_time_assignments) CHECK(pi == AssignmentVector{1});
  CHECK(r.decomposition.localization == doctest::Approx(0.5));
  CHECK(r.decomposition.switching == 0.0);
}

TEST_CASE("early death scenario decomposition") {
  const auto [x, y] = scenario_early_death(0.1);
  const ExactResult r = exact_metric(x, y, figure_params());
  CHECK(r.value == doctest::Approx(2.9).epsilon(1e-12));
  CHECK(r.decomposition.localization == doctest::Approx(0.4));
  CHECK(r.decomposition.missed == doctest::Approx(2.5));
  CHECK(r.decomposition.false_ == 0.0);
  CHECK(r.decomposition.switching == 0.0);
}

TEST_CASE("track break scenario has one switch") {
  const auto [x, y] = scenario_track_break(0.1);
  const ExactResult r = exact_metric(x, y, figure_params());
  CHECK(r.value == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(r.decomposition.localization == doctest::Approx(0.5));
  CHECK(r.decomposition.switching == doctest::Approx(2.0));
  // assignments follow Y1 then Y2
  CHECK(r.per_time_assignments[2] == AssignmentVector{1});
  CHECK(r.per_time_assignments[3] == AssignmentVector{2});
}

TEST_CASE("doubled track break scenario doubles the cost") {
  const auto [x, y] = scenario_track_break_doubled(0.1);
  const ExactResult r = exact_metric(x, y, figure_params());
  CHECK(r.value == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("crossing scenarios") {
  const auto [xa, ya] = scenario_full_swap(0.1);
  CHECK(exact_metric(xa, ya, figure_params()).value ==
        doctest::Approx(4.8).epsilon(1e-12));
  const auto [xb, yb] = scenario_half_swap(0.1);
  CHECK(exact_metric(xb, yb, figure_params()).value ==
        doctest::Approx(2.8).epsilon(1e-12));
}

TEST_CASE("oracle equivalence on random instances") {
  std::mt19937_64 rng(2024);
  MetricParams params = figure_params();
  for (int it = 0; it < 200; ++it) {
    const int T = 1 + static_cast<int>(rng() % 4);
    const TrajectorySet x = random_set(rng, T, 2);
    const TrajectorySet y = random_set(rng, T, 2);
    const ExactResult a = exact_metric(x, y, params);
    const ExactResult b = brute_force_metric(x, y, params);
    CHECK(a.raw_cost == doctest::Approx(b.raw_cost).epsilon(1e-9));
    CHECK(a.per_time_assignments == b.per_time_assignments);
  }
}

TEST_CASE("decomposition sums to raw cost") {
  std::mt19937_64 rng(99);
  MetricParams params = figure_params();
  params.p = 2.0;
  for (int it = 0; it < 50; ++it) {
    const TrajectorySet x = random_set(rng, 3, 2);
    const TrajectorySet y = random_set(rng, 3, 2);
    const ExactResult r = exact_metric(x, y, params);
    CHECK(r.decomposition.total() == doctest::Approx(r.raw_cost).epsilon(1e-9));
  }
}

TEST_CASE("caps are enforced") {
  ExactOptions opts;
  opts.assignment_cap = 5;
  const TrajectorySet x = set1d(1, {traj1d(1, {0}), traj1d(1, {1})});
  const TrajectorySet y = set1d(1, {traj1d(1, {0}), traj1d(1, {1})});
  CHECK_THROWS_AS(exact_metric(x, y, figure_params(), opts), CapExceededError);

  ExactOptions seq;
  seq.sequence_cap = 10;
  const auto [x5, y5] = scenario_close_pair(0.1);
  CHECK_THROWS_AS(brute_force_metric(x5, y5, figure_params(), seq),
                  CapExceededError);
}

TEST_CASE("mismatched windows rejected") {
  const TrajectorySet a = set1d(2, {traj1d(1, {0})});
  const TrajectorySet b = set1d(3, {traj1d(1, {0})});
  CHECK_THROWS_AS(exact_metric(a, b, figure_params()), ValidationError);
}
