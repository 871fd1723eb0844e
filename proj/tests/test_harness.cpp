#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include "common.hpp"
#include "trajmetric/exact.hpp"
#include "trajmetric/json_io.hpp"
#include "trajmetric/lp.hpp"
#include "trajmetric/scenario.hpp"

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

TEST_CASE("scenario generation is seed deterministic") {
  ScenarioConfig cfg;
  cfg.seed = 12345;
  const TrajectorySet a = generate_scenario(cfg);
  const TrajectorySet b = generate_scenario(cfg);
  CHECK(sets_equal(a, b));
  CHECK(validate_set(a).empty());
  cfg.seed = 54321;
  const TrajectorySet c = generate_scenario(cfg);
  CHECK((a.size() != c.size() || !sets_equal(a, c)));
}

TEST_CASE("survival one with start forced to step one gives full-length tracks") {
  ScenarioConfig cfg;
  cfg.T = 5;
  cfg.survival_prob = 1.0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    cfg.seed = seed;
    for (const auto& t : generate_scenario(cfg).trajectories) {
      if (t.start == 1) CHECK(t.length() == 5);
      CHECK(t.last_step() == 5);  // no death before the window ends
    }
  }
}

TEST_CASE("cardinality is uniform") {
  ScenarioConfig cfg;
  cfg.n_max = 4;
  std::map<int, int> freq;
  const int draws = 10000;
  for (int s = 0; s < draws; ++s) {
    cfg.seed = static_cast<std::uint64_t>(s);
    ++freq[generate_scenario(cfg).size()];
  }
  // 3 sigma band around draws/4 for a binomial with q = 1/4
  const double expected = draws / 4.0;
  const double sigma = std::sqrt(draws * 0.25 * 0.75);
  for (int n = 1; n <= 4; ++n) {
    CHECK(freq[n] > expected - 3 * sigma);
    CHECK(freq[n] < expected + 3 * sigma);
  }
}

TEST_CASE("scenario config validation") {
  ScenarioConfig bad;
  bad.n_max = 0;
  CHECK_THROWS_AS(generate_scenario(bad), ValidationError);
  bad = {};
  bad.survival_prob = 0.0;
  CHECK_THROWS_AS(generate_scenario(bad), ValidationError);
  bad = {};
  bad.T = 0;
  CHECK_THROWS_AS(generate_scenario(bad), ValidationError);
}

TEST_CASE("mc estimate is exact for a deterministic pair") {
  const auto pair = scenario_track_break(0.1);
  const MetricParams params = figure_params();
  const double exact = exact_metric(pair.x, pair.y, params).value;
  PairSampler sampler = [&](int) { return std::make_pair(pair.x, pair.y); };
  PairMetric metric = [&](const TrajectorySet& a, const TrajectorySet& b) {
    return exact_metric(a, b, params).value;
  };
  for (int n : {1, 7, 40}) {
    const McEstimate est = rfs_metric_mc(sampler, params, n, metric);
    CHECK(est.value == doctest::Approx(exact).epsilon(1e-12));
    CHECK(est.std_error == doctest::Approx(0.0));
    CHECK(est.samples == n);
    CHECK(est.failures == 0);
  }
}

TEST_CASE("mc estimate of an equal mixture lands near the closed-form mean") {
  const auto pa = scenario_close_pair(0.1);     // value 0.5
  const auto pb = scenario_early_death(0.1);    // value 2.9
  const MetricParams params = figure_params();  // p = 1
  PairSampler sampler = [&](int s) {
    return (s % 2 == 0) ? std::make_pair(pa.x, pa.y) : std::make_pair(pb.x, pb.y);
  };
  PairMetric metric = [&](const TrajectorySet& a, const TrajectorySet& b) {
    return exact_metric(a, b, params).value;
  };
  const McEstimate est = rfs_metric_mc(sampler, params, 400, metric);
  CHECK(est.value == doctest::Approx(0.5 * (0.5 + 2.9)).epsilon(1e-9));
  CHECK(est.std_error > 0.0);
  CHECK(std::abs(est.value - 1.7) <= 3 * est.std_error + 1e-9);
}

TEST_CASE("mc with X equal to Y is zero") {
  const TrajectorySet s = set1d(3, {traj1d(1, {0, 1, 2})});
  const MetricParams params = figure_params();
  PairSampler sampler = [&](int) { return std::make_pair(s, s); };
  PairMetric metric = [&](const TrajectorySet& a, const TrajectorySet& b) {
    return exact_metric(a, b, params).value;
  };
  CHECK(rfs_metric_mc(sampler, params, 10, metric).value == 0.0);
}

TEST_CASE("mc counts and skips solver failures") {
  const auto pair = scenario_close_pair(0.1);
  const MetricParams params = figure_params();
  PairSampler sampler = [&](int) { return std::make_pair(pair.x, pair.y); };
  int calls = 0;
  PairMetric metric = [&](const TrajectorySet& a, const TrajectorySet& b) {
    if (++calls % 2 == 0) throw SolverError("synthetic failure");
    return exact_metric(a, b, params).value;
  };
  const McEstimate est = rfs_metric_mc(sampler, params, 10, metric);
  CHECK(est.samples == 5);
  CHECK(est.failures == 5);
  CHECK(est.value == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("benchmark single cell") {
  BenchGrid grid;
  grid.T_values = {3};
  grid.n_max_values = {2};
  grid.solvers = {"lp"};
  const auto cells = benchmark_scaling(grid, figure_params(), 1, 7);
  REQUIRE(cells.size() == 1);
  CHECK(cells[0].complete);
  CHECK(cells[0].mean_runtime_sec >= 0.0);
  CHECK(cells[0].solver == "lp");

  const std::string csv = bench_to_csv(cells);
  CHECK(csv.find("schema_version") != std::string::npos);
  CHECK(csv.find("lp,3,2,1,") != std::string::npos);
}

TEST_CASE("benchmark marks capped cells incomplete") {
  BenchGrid grid;
  grid.T_values = {3};
  grid.n_max_values = {2};
  grid.solvers = {"viterbi"};
  MetricParams params = figure_params();
  // force the cap through a scenario the exact solver cannot enumerate; this
  // seed draws cardinalities 19 and 23, far past the assignment cap
  BenchGrid big = grid;
  big.n_max_values = {40};
  const auto cells = benchmark_scaling(big, params, 1, 1);
  REQUIRE(cells.size() == 1);
  CHECK_FALSE(cells[0].complete);
  CHECK_FALSE(cells[0].error.empty());
}

TEST_CASE("benchmark values are seed deterministic") {
  BenchGrid grid;
  grid.T_values = {4};
  grid.n_max_values = {2};
  grid.solvers = {"lp"};
  const auto a = benchmark_scaling(grid, figure_params(), 2, 99);
  const auto b = benchmark_scaling(grid, figure_params(), 2, 99);
  CHECK(a[0].mean_value == b[0].mean_value);
}

TEST_CASE("scenario and grid config parsing") {
  const ScenarioConfig cfg = scenario_config_from_json(
      R"({"n_max": 3, "T": 7, "survival_prob": 0.9, "seed": 4})");
  CHECK(cfg.n_max == 3);
  CHECK(cfg.T == 7);
  CHECK(cfg.survival_prob == doctest::Approx(0.9));
  CHECK_THROWS_AS(scenario_config_from_json(R"({"nmax": 3})"), ValidationError);

  const BenchGrid grid = bench_grid_from_json(
      R"({"T": [2, 4], "n_max": [1], "solvers": ["lp", "admm"]})");
  CHECK(grid.T_values.size() == 2);
  CHECK(grid.solvers[1] == "admm");
}
