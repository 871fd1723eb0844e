#pragma once

#include <cstdint>
#include <vector>

#include "trajmetric/assignment.hpp"
#include "trajmetric/weights.hpp"

namespace trajmetric {

struct ExactResult {
  double value = 0.0;     // metric value, raw_cost^(1/p)
  double raw_cost = 0.0;  // optimal p-th power cost
  std::vector<AssignmentVector> per_time_assignments;  // one per step
  CostBreakdown decomposition;
};

struct ExactOptions {
  std::uint64_t assignment_cap = 1000000;   // max |Pi| for the trellis
  std::uint64_t sequence_cap = 2000000;     // max |Pi|^T for brute force
};

/// Exact multi-dimensional assignment metric via dynamic programming over the
/// trellis of assignment vectors.  Ties broken towards the lexicographically
/// smallest assignment sequence.
ExactResult exact_metric(const TrajectorySet& x, const TrajectorySet& y,
                         const MetricParams& params, const ExactOptions& opts = {});

/// Exhaustive minimization over all assignment sequences; test oracle for
/// exact_metric with the same tie-breaking.
ExactResult brute_force_metric(const TrajectorySet& x, const TrajectorySet& y,
                               const MetricParams& params,
                               const ExactOptions& opts = {});

}  // namespace trajmetric
