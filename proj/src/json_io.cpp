#include "trajmetric/json_io.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "trajmetric/errors.hpp"

namespace trajmetric {

namespace {

using nlohmann::json;

json parse(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ValidationError("malformed JSON");
  return j;
}

void reject_unknown(const json& obj, std::initializer_list<const char*> known,
                    const char* where) {
  if (!obj.is_object())
    throw ValidationError(std::string(where) + ": expected a JSON object");
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (const char* k : known)
      if (key == k) ok = true;
    if (!ok)
      throw ValidationError(std::string(where) + ": unknown key \"" + key + "\"");
  }
}

int get_int(const json& obj, const char* key, const char* where) {
  if (!obj.contains(key))
    throw ValidationError(std::string(where) + ": missing key \"" + key + "\"");
  const json& v = obj.at(key);
  if (!v.is_number_integer())
    throw ValidationError(std::string(where) + ": \"" + key + "\" must be an integer");
  return v.get<int>();
}

}  // namespace

TrajectorySet trajectory_set_from_json(const std::string& text) {
  const json j = parse(text);
  reject_unknown(j, {"window", "state_dim", "trajectories"}, "trajectory set");
  TrajectorySet set;
  set.window = get_int(j, "window", "trajectory set");
  set.state_dim = get_int(j, "state_dim", "trajectory set");
  if (!j.contains("trajectories") || !j.at("trajectories").is_array())
    throw ValidationError("trajectory set: \"trajectories\" must be an array");
  for (const json& tj : j.at("trajectories")) {
    reject_unknown(tj, {"start", "states"}, "trajectory");
    Trajectory traj;
    traj.start = get_int(tj, "start", "trajectory");
    if (!tj.contains("states") || !tj.at("states").is_array())
      throw ValidationError("trajectory: \"states\" must be an array");
    for (const json& sj : tj.at("states")) {
      if (!sj.is_array())
        throw ValidationError("trajectory: each state must be an array of numbers");
      Eigen::VectorXd v(static_cast<Eigen::Index>(sj.size()));
      Eigen::Index d = 0;
      for (const json& f : sj) {
        if (!f.is_number())
          throw ValidationError("trajectory: state components must be numbers");
        v(d++) = f.get<double>();
      }
      traj.states.push_back(std::move(v));
    }
    set.trajectories.push_back(std::move(traj));
  }
  require_valid(set);
  return set;
}

std::string trajectory_set_to_json(const TrajectorySet& set) {
  json j;
  j["window"] = set.window;
  j["state_dim"] = set.state_dim;
  j["trajectories"] = json::array();
  for (const auto& traj : set.trajectories) {
    json tj;
    tj["start"] = traj.start;
    tj["states"] = json::array();
    for (const auto& s : traj.states) {
      json sj = json::array();
      for (Eigen::Index d = 0; d < s.size(); ++d) sj.push_back(s(d));
      tj["states"].push_back(std::move(sj));
    }
    j["trajectories"].push_back(std::move(tj));
  }
  return j.dump(2);
}

ScenarioConfig scenario_config_from_json(const std::string& text) {
  const json j = parse(text);
  reject_unknown(j,
                 {"n_max", "T", "state_dim", "birth_region_min",
                  "birth_region_max", "birth_var", "survival_prob",
                  "transition_var", "seed"},
                 "scenario config");
  ScenarioConfig cfg;
  if (j.contains("n_max")) cfg.n_max = j.at("n_max").get<int>();
  if (j.contains("T")) cfg.T = j.at("T").get<int>();
  if (j.contains("state_dim")) cfg.state_dim = j.at("state_dim").get<int>();
  if (j.contains("birth_region_min"))
    cfg.birth_region_min = j.at("birth_region_min").get<double>();
  if (j.contains("birth_region_max"))
    cfg.birth_region_max = j.at("birth_region_max").get<double>();
  if (j.contains("birth_var")) cfg.birth_var = j.at("birth_var").get<double>();
  if (j.contains("survival_prob"))
    cfg.survival_prob = j.at("survival_prob").get<double>();
  if (j.contains("transition_var")) {
    cfg.transition_var.clear();
    for (const json& v : j.at("transition_var"))
      cfg.transition_var.push_back(v.get<double>());
  }
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  cfg.validate();
  return cfg;
}

BenchGrid bench_grid_from_json(const std::string& text) {
  const json j = parse(text);
  reject_unknown(j, {"T", "n_max", "solvers"}, "benchmark grid");
  BenchGrid grid;
  if (j.contains("T"))
    for (const json& v : j.at("T")) grid.T_values.push_back(v.get<int>());
  if (j.contains("n_max"))
    for (const json& v : j.at("n_max")) grid.n_max_values.push_back(v.get<int>());
  if (j.contains("solvers"))
    for (const json& v : j.at("solvers"))
      grid.solvers.push_back(v.get<std::string>());
  return grid;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file for reading: " + path);
  std::ostringstream oss;
  oss << in.rdbuf();
  if (in.bad()) throw IoError("read failure: " + path);
  return oss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open file for writing: " + path);
  out << text;
  if (!out) throw IoError("write failure: " + path);
}

}  // namespace trajmetric
