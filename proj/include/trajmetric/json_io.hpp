#pragma once

#include <string>

#include "trajmetric/scenario.hpp"
#include "trajmetric/trajectory.hpp"

namespace trajmetric {

/// Parse the trajectory-set JSON schema:
/// {"window": T, "state_dim": N,
///  "trajectories": [{"start": w, "states": [[f,...],...]}, ...]}
/// Unknown keys are rejected; the result is validated.
TrajectorySet trajectory_set_from_json(const std::string& text);
std::string trajectory_set_to_json(const TrajectorySet& set);

/// Scenario config JSON; all keys optional with defaults, unknown keys
/// rejected.  Keys: n_max, T, state_dim, birth_region_min, birth_region_max,
/// birth_var, survival_prob, transition_var, seed.
ScenarioConfig scenario_config_from_json(const std::string& text);

/// Benchmark grid JSON: {"T": [..], "n_max": [..], "solvers": [..]}.
BenchGrid bench_grid_from_json(const std::string& text);

std::string read_file(const std::string& path);        // throws IoError
void write_file(const std::string& path, const std::string& text);

}  // namespace trajmetric
