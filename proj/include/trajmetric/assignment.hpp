#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "trajmetric/trajectory.hpp"

namespace trajmetric {

/// Hard assignment at one time step: entries[i] in {0..n_y}, 0 = unassigned,
/// nonzero values pairwise distinct.
using AssignmentVector = std::vector<int>;

bool assignment_valid(const AssignmentVector& pi, int n_y);

/// Number of assignment vectors between index sets of sizes n_x and n_y:
/// sum_k C(n_x,k) C(n_y,k) k!.  Saturates at the given limit.
std::uint64_t count_assignments(int n_x, int n_y,
                                std::uint64_t limit = UINT64_MAX);

/// All assignment vectors in lexicographic order of their entries.
/// Throws CapExceededError when the count exceeds the cap.
std::vector<AssignmentVector> enumerate_assignments(int n_x, int n_y,
                                                    std::uint64_t cap = 1000000);

/// (n_x+1) x (n_y+1) matrix of p-th power base distances at step k; the last
/// row/column stand for the unassigned index.
using CostMatrix = Eigen::MatrixXd;

CostMatrix cost_matrix(const TrajectorySet& x, const TrajectorySet& y, int k,
                       const MetricParams& params);

/// Localization plus missed/false cost of one assignment vector against the
/// cost matrix of its time step, in p-th power units.
double loc_cost(const CostMatrix& d, const AssignmentVector& pi);

/// Switching cost gamma^p * sum_i s(pi_i, pi_i') with a half switch for
/// assigned/unassigned changes.
double switch_cost(const AssignmentVector& a, const AssignmentVector& b,
                   const MetricParams& params);

}  // namespace trajmetric
