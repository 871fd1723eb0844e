#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "trajmetric/admm.hpp"
#include "trajmetric/exact.hpp"
#include "trajmetric/json_io.hpp"
#include "trajmetric/lp.hpp"
#include "trajmetric/scenario.hpp"

namespace py = pybind11;
using namespace trajmetric;

PYBIND11_MODULE(_trajmetric, m) {
  m.doc() = "Metric on finite sets of trajectories";

  py::register_exception<ValidationError>(m, "ValidationError");
  py::register_exception<CapExceededError>(m, "CapExceededError");
  py::register_exception<SolverError>(m, "SolverError");
  py::register_exception<IoError>(m, "IoError");

  py::class_<Trajectory>(m, "Trajectory")
      .def(py::init<>())
      .def_readwrite("start", &Trajectory::start)
      .def_readwrite("states", &Trajectory::states)
      .def("length", &Trajectory::length);

  py::class_<TrajectorySet>(m, "TrajectorySet")
      .def(py::init<>())
      .def_readwrite("trajectories", &TrajectorySet::trajectories)
      .def_readwrite("window", &TrajectorySet::window)
      .def_readwrite("state_dim", &TrajectorySet::state_dim)
      .def("size", &TrajectorySet::size);

  py::class_<MetricParams>(m, "MetricParams")
      .def(py::init<>())
      .def_readwrite("c", &MetricParams::c)
      .def_readwrite("gamma", &MetricParams::gamma)
      .def_readwrite("p", &MetricParams::p);

  py::class_<CostBreakdown>(m, "CostBreakdown")
      .def_readonly("localization", &CostBreakdown::localization)
      .def_readonly("missed", &CostBreakdown::missed)
      .def_readonly("false_", &CostBreakdown::false_)
      .def_readonly("switching", &CostBreakdown::switching)
      .def("total", &CostBreakdown::total);

  py::class_<ExactResult>(m, "ExactResult")
      .def_readonly("value", &ExactResult::value)
      .def_readonly("raw_cost", &ExactResult::raw_cost)
      .def_readonly("per_time_assignments", &ExactResult::per_time_assignments)
      .def_readonly("decomposition", &ExactResult::decomposition);

  py::class_<LpResult>(m, "LpResult")
      .def_readonly("value", &LpResult::value)
      .def_readonly("raw_cost", &LpResult::raw_cost)
      .def_readonly("weights", &LpResult::weights)
      .def_readonly("decomposition", &LpResult::decomposition);

  py::class_<AdmmConfig>(m, "AdmmConfig")
      .def(py::init<>())
      .def_readwrite("rho", &AdmmConfig::rho)
      .def_readwrite("max_admm_iters", &AdmmConfig::max_admm_iters)
      .def_readwrite("max_qp_iters", &AdmmConfig::max_qp_iters)
      .def_readwrite("residual_factor", &AdmmConfig::residual_factor);

  py::class_<AdmmResult>(m, "AdmmResult")
      .def_readonly("value", &AdmmResult::value)
      .def_readonly("raw_cost", &AdmmResult::raw_cost)
      .def_readonly("weights", &AdmmResult::weights)
      .def_readonly("decomposition", &AdmmResult::decomposition)
      .def_readonly("iterations", &AdmmResult::iterations)
      .def_readonly("converged", &AdmmResult::converged);

  py::class_<ScenarioConfig>(m, "ScenarioConfig")
      .def(py::init<>())
      .def_readwrite("n_max", &ScenarioConfig::n_max)
      .def_readwrite("T", &ScenarioConfig::T)
      .def_readwrite("state_dim", &ScenarioConfig::state_dim)
      .def_readwrite("survival_prob", &ScenarioConfig::survival_prob)
      .def_readwrite("seed", &ScenarioConfig::seed);

  py::class_<McEstimate>(m, "McEstimate")
      .def_readonly("value", &McEstimate::value)
      .def_readonly("std_error", &McEstimate::std_error)
      .def_readonly("samples", &McEstimate::samples)
      .def_readonly("failures", &McEstimate::failures);

  m.def("exact_metric",
        [](const TrajectorySet& x, const TrajectorySet& y,
           const MetricParams& p) { return exact_metric(x, y, p); });
  m.def("brute_force_metric",
        [](const TrajectorySet& x, const TrajectorySet& y,
           const MetricParams& p) { return brute_force_metric(x, y, p); });
  m.def("lp_metric", [](const TrajectorySet& x, const TrajectorySet& y,
                        const MetricParams& p) { return lp_metric(x, y, p); });
  m.def("admm_metric",
        [](const TrajectorySet& x, const TrajectorySet& y, const MetricParams& p,
           const AdmmConfig& cfg) { return admm_metric(x, y, p, cfg); },
        py::arg("x"), py::arg("y"), py::arg("params"),
        py::arg("config") = AdmmConfig{});
  m.def("generate_scenario", &generate_scenario);
  m.def("trajectory_set_from_json", &trajectory_set_from_json);
  m.def("trajectory_set_to_json", &trajectory_set_to_json);
}
