#include "trajmetric/exact.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace trajmetric {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ExactResult finish(const TrajectorySet& x, const TrajectorySet& y,
                   const MetricParams& params, double raw,
                   std::vector<AssignmentVector> seq) {
  ExactResult res;
  res.raw_cost = raw;
  res.value = std::pow(raw, 1.0 / params.p);
  std::vector<WeightMatrix> weights;
  weights.reserve(seq.size());
  for (const auto& pi : seq) weights.push_back(pi_to_W(pi, y.size()));
  res.decomposition = decompose(weights, x, y, params);
  res.per_time_assignments = std::move(seq);
  return res;
}

}  // namespace

ExactResult exact_metric(const TrajectorySet& x, const TrajectorySet& y,
                         const MetricParams& params, const ExactOptions& opts) {
  require_compatible(x, y);
  params.validate();
  const int T = x.window;
  const auto states = enumerate_assignments(x.size(), y.size(), opts.assignment_cap);
  const int m = static_cast<int>(states.size());

  std::vector<CostMatrix> d(static_cast<size_t>(T));
  for (int k = 0; k < T; ++k) d[static_cast<size_t>(k)] = cost_matrix(x, y, k + 1, params);

  // stage costs
  std::vector<std::vector<double>> stage(static_cast<size_t>(T),
                                         std::vector<double>(static_cast<size_t>(m)));
  for (int k = 0; k < T; ++k)
    for (int s = 0; s < m; ++s)
      stage[static_cast<size_t>(k)][static_cast<size_t>(s)] =
          loc_cost(d[static_cast<size_t>(k)], states[static_cast<size_t>(s)]);

  // upper bound from the all-unassigned sequence, used to prune trellis states
  double bound = 0.0;
  for (int k = 0; k < T; ++k) bound += stage[static_cast<size_t>(k)][0];

  // backward cost-to-go
  std::vector<std::vector<double>> ctg(static_cast<size_t>(T),
                                       std::vector<double>(static_cast<size_t>(m), kInf));
  ctg[static_cast<size_t>(T - 1)] = stage[static_cast<size_t>(T - 1)];
  for (int k = T - 2; k >= 0; --k) {
    auto& cur = ctg[static_cast<size_t>(k)];
    const auto& next = ctg[static_cast<size_t>(k + 1)];
    for (int s = 0; s < m; ++s) {
      if (stage[static_cast<size_t>(k)][static_cast<size_t>(s)] > bound) continue;
      double best = kInf;
      for (int t = 0; t < m; ++t) {
        if (next[static_cast<size_t>(t)] >= best) continue;
        const double cand = next[static_cast<size_t>(t)] +
                            switch_cost(states[static_cast<size_t>(s)],
                                        states[static_cast<size_t>(t)], params);
        if (cand < best) best = cand;
      }
      cur[static_cast<size_t>(s)] = stage[static_cast<size_t>(k)][static_cast<size_t>(s)] + best;
    }
  }

  // forward reconstruction, lexicographically smallest among minimizers
  std::vector<AssignmentVector> seq;
  seq.reserve(static_cast<size_t>(T));
  double raw = kInf;
  for (int s = 0; s < m; ++s) raw = std::min(raw, ctg[0][static_cast<size_t>(s)]);
  int cur_state = 0;
  for (int s = 0; s < m; ++s) {
    if (ctg[0][static_cast<size_t>(s)] <= raw + 1e-12 * (1.0 + std::abs(raw))) {
      cur_state = s;
      break;
    }
  }
  seq.push_back(states[static_cast<size_t>(cur_state)]);
  for (int k = 0; k < T - 1; ++k) {
    const auto& next = ctg[static_cast<size_t>(k + 1)];
    double best = kInf;
    for (int t = 0; t < m; ++t) {
      if (!std::isfinite(next[static_cast<size_t>(t)])) continue;
      const double cand = next[static_cast<size_t>(t)] +
                          switch_cost(states[static_cast<size_t>(cur_state)],
                                      states[static_cast<size_t>(t)], params);
      best = std::min(best, cand);
    }
    for (int t = 0; t < m; ++t) {
      if (!std::isfinite(next[static_cast<size_t>(t)])) continue;
      const double cand = next[static_cast<size_t>(t)] +
                          switch_cost(states[static_cast<size_t>(cur_state)],
                                      states[static_cast<size_t>(t)], params);
      if (cand <= best + 1e-12 * (1.0 + std::abs(best))) {
        cur_state = t;
        break;
      }
    }
    seq.push_back(states[static_cast<size_t>(cur_state)]);
  }
  return finish(x, y, params, raw, std::move(seq));
}

ExactResult brute_force_metric(const TrajectorySet& x, const TrajectorySet& y,
                               const MetricParams& params,
                               const ExactOptions& opts) {
  require_compatible(x, y);
  params.validate();
  const int T = x.window;
  const auto states = enumerate_assignments(x.size(), y.size(), opts.assignment_cap);
  const std::uint64_t m = states.size();
  long double total = 1.0L;
  for (int k = 0; k < T; ++k) {
    total *= static_cast<long double>(m);
    if (total > static_cast<long double>(opts.sequence_cap))
      throw CapExceededError("brute-force sequence space exceeds cap of " +
                             std::to_string(opts.sequence_cap));
  }

  std::vector<CostMatrix> d(static_cast<size_t>(T));
  for (int k = 0; k < T; ++k) d[static_cast<size_t>(k)] = cost_matrix(x, y, k + 1, params);

  std::vector<int> idx(static_cast<size_t>(T), 0);
  std::vector<int> best_idx;
  double best = kInf;
  // depth-first over sequences in lexicographic order; strict improvement
  // keeps the lexicographically smallest optimum
  std::vector<double> prefix(static_cast<size_t>(T) + 1, 0.0);
  int depth = 0;
  while (depth >= 0) {
    if (depth == T) {
      if (prefix[static_cast<size_t>(T)] < best) {
        best = prefix[static_cast<size_t>(T)];
        best_idx = idx;
      }
      --depth;
      ++idx[static_cast<size_t>(depth)];
      continue;
    }
    int& s = idx[static_cast<size_t>(depth)];
    if (s >= static_cast<int>(m)) {
      s = 0;
      --depth;
      if (depth >= 0) ++idx[static_cast<size_t>(depth)];
      continue;
    }
    double cost = prefix[static_cast<size_t>(depth)] +
                  loc_cost(d[static_cast<size_t>(depth)], states[static_cast<size_t>(s)]);
    if (depth > 0)
      cost += switch_cost(states[static_cast<size_t>(idx[static_cast<size_t>(depth - 1)])],
                          states[static_cast<size_t>(s)], params);
    if (cost >= best) {
      ++s;  // cheap prune, costs only grow
      continue;
    }
    prefix[static_cast<size_t>(depth) + 1] = cost;
    ++depth;
    if (depth < T) idx[static_cast<size_t>(depth)] = 0;
  }

  std::vector<AssignmentVector> seq;
  seq.reserve(static_cast<size_t>(T));
  for (int k = 0; k < T; ++k)
    seq.push_back(states[static_cast<size_t>(best_idx[static_cast<size_t>(k)])]);
  return finish(x, y, params, best, std::move(seq));
}

}  // namespace trajmetric
