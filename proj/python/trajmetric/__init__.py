from ._trajmetric import (
    AdmmConfig,
    AdmmResult,
    CapExceededError,
    CostBreakdown,
    ExactResult,
    IoError,
    LpResult,
    McEstimate,
    MetricParams,
    ScenarioConfig,
    SolverError,
    Trajectory,
    TrajectorySet,
    ValidationError,
    admm_metric,
    brute_force_metric,
    exact_metric,
    generate_scenario,
    lp_metric,
    trajectory_set_from_json,
    trajectory_set_to_json,
)

__all__ = [
    "AdmmConfig",
    "AdmmResult",
    "CapExceededError",
    "CostBreakdown",
    "ExactResult",
    "IoError",
    "LpResult",
    "McEstimate",
    "MetricParams",
    "ScenarioConfig",
    "SolverError",
    "Trajectory",
    "TrajectorySet",
    "ValidationError",
    "admm_metric",
    "brute_force_metric",
    "exact_metric",
    "generate_scenario",
    "lp_metric",
    "trajectory_set_from_json",
    "trajectory_set_to_json",
]
