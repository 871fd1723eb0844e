#include "trajmetric/admm.hpp"

#include <cmath>
#include <limits>

namespace trajmetric {

WeightPolytope::WeightPolytope(int n_x, int n_y) : n_x_(n_x), n_y_(n_y) {
  const int nc = n_x + n_y + 1;  // row sums, column sums, corner
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(nc, nc);
  for (int i = 0; i < n_x; ++i) gram(i, i) = n_y + 1;
  for (int j = 0; j < n_y; ++j) gram(n_x + j, n_x + j) = n_x + 1;
  for (int i = 0; i < n_x; ++i)
    for (int j = 0; j < n_y; ++j) gram(i, n_x + j) = gram(n_x + j, i) = 1.0;
  gram(nc - 1, nc - 1) = 1.0;
  gram_ = gram.ldlt();
}

Eigen::MatrixXd WeightPolytope::project_affine(const Eigen::MatrixXd& m) const {
  const int nc = n_x_ + n_y_ + 1;
  Eigen::VectorXd resid(nc);
  for (int i = 0; i < n_x_; ++i) resid(i) = m.row(i).sum() - 1.0;
  for (int j = 0; j < n_y_; ++j) resid(n_x_ + j) = m.col(j).sum() - 1.0;
  resid(nc - 1) = m(n_x_, n_y_);
  const Eigen::VectorXd lambda = gram_.solve(resid);
  Eigen::MatrixXd out = m;
  for (int i = 0; i < n_x_; ++i) out.row(i).array() -= lambda(i);
  for (int j = 0; j < n_y_; ++j) out.col(j).array() -= lambda(n_x_ + j);
  out(n_x_, n_y_) -= lambda(nc - 1);
  return out;
}

Eigen::MatrixXd WeightPolytope::project(const Eigen::MatrixXd& m, double tol,
                                        int max_sweeps) const {
  Eigen::MatrixXd z = m;
  // Dykstra correction is only needed for the non-affine (clipping) step
  Eigen::MatrixXd correction = Eigen::MatrixXd::Zero(m.rows(), m.cols());
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    const Eigen::MatrixXd y = project_affine(z);
    const Eigen::MatrixXd clipped = (y + correction).cwiseMax(0.0);
    correction = y + correction - clipped;
    z = clipped;
    if (weight_violation(z) <= tol) break;
  }
  return z;
}

void AdmmConfig::validate() const {
  if (!(rho > 0.0)) throw ValidationError("rho must be positive");
  if (max_admm_iters < 1 || max_qp_iters < 1)
    throw ValidationError("iteration limits must be positive");
  if (!(residual_factor > 0.0))
    throw ValidationError("residual_factor must be positive");
}

namespace {

double block_objective(const BlockProblem& p, const Eigen::MatrixXd& w,
                       const Eigen::MatrixXd& what) {
  double obj = p.lin_w->cwiseProduct(w).sum();
  if (p.has_w_prox) obj += 0.5 * p.rho * (w - p.w_center).squaredNorm();
  if (p.has_what) {
    obj += 0.5 * p.rho * (what - p.what_center).squaredNorm();
    const int n_x = static_cast<int>(w.rows()) - 1;
    const int n_y = static_cast<int>(w.cols()) - 1;
    for (int i = 0; i < n_x; ++i)
      for (int j = 0; j < n_y; ++j)
        obj += p.switch_weight * std::abs(w(i, j) - what(i, j));
  }
  return obj;
}

// Initial iterate: per-step greedy hard assignment with a preference for
// keeping the previous step's pairing when it stays competitive (within the
// full-switch penalty).  Quality only affects startup, not the fixed point.
std::vector<Eigen::MatrixXd> greedy_weights(const std::vector<Eigen::MatrixXd>& d,
                                            int n_x, int n_y, double gamma_p) {
  std::vector<Eigen::MatrixXd> out;
  out.reserve(d.size());
  AssignmentVector prev(static_cast<size_t>(n_x), 0);
  for (const auto& dk : d) {
    AssignmentVector pi(static_cast<size_t>(n_x), 0);
    std::vector<bool> used(static_cast<size_t>(n_y), false);
    for (int i = 0; i < n_x; ++i) {
      int best_j = 0;  // 0 = unassigned
      double best_cost = dk(i, n_y) + 0.0;
      for (int j = 0; j < n_y; ++j) {
        if (used[static_cast<size_t>(j)]) continue;
        const double cost = dk(i, j) - dk(n_x, j);  // marginal vs false target
        if (cost < best_cost) {
          best_cost = cost;
          best_j = j + 1;
        }
      }
      const int pj = prev[static_cast<size_t>(i)];
      if (pj != 0 && pj != best_j && !used[static_cast<size_t>(pj - 1)] &&
          dk(i, pj - 1) - dk(n_x, pj - 1) <= best_cost + gamma_p) {
        best_j = pj;
      }
      pi[static_cast<size_t>(i)] = best_j;
      if (best_j != 0) used[static_cast<size_t>(best_j - 1)] = true;
    }
    out.push_back(pi_to_W(pi, n_y));
    prev = pi;
  }
  // backward pass: extend assignments into earlier steps where pairing is
  // free (for instance before both trajectories are born), avoiding spurious
  // half switches at birth
  std::vector<AssignmentVector> pis;
  pis.reserve(out.size());
  for (const auto& w : out) pis.push_back(W_to_pi(w));
  for (int k = static_cast<int>(pis.size()) - 2; k >= 0; --k) {
    const auto& dk = d[static_cast<size_t>(k)];
    std::vector<bool> used(static_cast<size_t>(n_y), false);
    for (int j : pis[static_cast<size_t>(k)])
      if (j != 0) used[static_cast<size_t>(j - 1)] = true;
    for (int i = 0; i < n_x; ++i) {
      const int next_j = pis[static_cast<size_t>(k) + 1][static_cast<size_t>(i)];
      if (pis[static_cast<size_t>(k)][static_cast<size_t>(i)] != 0 || next_j == 0)
        continue;
      if (used[static_cast<size_t>(next_j - 1)]) continue;
      if (dk(i, next_j - 1) - dk(n_x, next_j - 1) <= dk(i, n_y)) {
        pis[static_cast<size_t>(k)][static_cast<size_t>(i)] = next_j;
        used[static_cast<size_t>(next_j - 1)] = true;
        out[static_cast<size_t>(k)] = pi_to_W(pis[static_cast<size_t>(k)], n_y);
      }
    }
  }
  return out;
}

void fill_switch_vars(const BlockProblem& p, BlockVars& v) {
  const int n_x = static_cast<int>(v.w.rows()) - 1;
  const int n_y = static_cast<int>(v.w.cols()) - 1;
  if (!p.has_what) {
    v.h.resize(0, 0);
    v.e = 0.0;
    return;
  }
  v.h = (v.w.topLeftCorner(n_x, n_y) - v.what.topLeftCorner(n_x, n_y)).cwiseAbs();
  v.e = v.h.sum();
}

}  // namespace

BlockVars qp_block_solve(const BlockProblem& prob, BlockVars start,
                         int max_qp_iters, const WeightPolytope& poly) {
  const int n_x = poly.n_x();
  const int n_y = poly.n_y();
  BlockVars cur = std::move(start);
  cur.w = poly.project(cur.w);
  if (prob.has_what) cur.what = poly.project(cur.what);

  // uncoupled proximal block has a closed form: project the prox target
  if (!prob.has_what && prob.has_w_prox) {
    Eigen::MatrixXd target = prob.w_center - *prob.lin_w / prob.rho;
    Eigen::MatrixXd candidate = poly.project(target);
    if (block_objective(prob, candidate, cur.what) <=
        block_objective(prob, cur.w, cur.what)) {
      cur.w = candidate;
    }
    fill_switch_vars(prob, cur);
    return cur;
  }

  // primal-dual splitting on the coupled block.  The coupling sw |W - What|
  // enters through its conjugate (a box constraint on the multiplier), so
  // every step is an exact prox: a clip for the multiplier and a scaled
  // polytope projection for the primal halves.  The multiplier is carried in
  // cur.dual across calls, which makes repeated calls converge to the true
  // block optimum instead of stalling at kinks of the coupling term.
  if (cur.dual.rows() != n_x || cur.dual.cols() != n_y)
    cur.dual = Eigen::MatrixXd::Zero(n_x, n_y);

  const double tau = 0.7;  // step sizes with tau * sigma * ||K||^2 < 1
  const double sigma = 0.7;

  Eigen::MatrixXd w = cur.w;
  Eigen::MatrixXd what = cur.what;
  Eigen::MatrixXd w_bar = w;
  Eigen::MatrixXd what_bar = what;
  Eigen::MatrixXd y = cur.dual;

  double best_obj = block_objective(prob, cur.w, cur.what);

  for (int it = 0; it < max_qp_iters; ++it) {
    // multiplier ascent with a clip to the conjugate box [-sw, sw]
    y += sigma * (w_bar.topLeftCorner(n_x, n_y) - what_bar.topLeftCorner(n_x, n_y));
    y = y.cwiseMax(-prob.switch_weight).cwiseMin(prob.switch_weight);

    // primal descent; the quadratic prox terms fold into the projection target
    Eigen::MatrixXd v_w = w - *prob.lin_w * tau;
    v_w.topLeftCorner(n_x, n_y) -= tau * y;
    Eigen::MatrixXd v_what = what;
    v_what.topLeftCorner(n_x, n_y) += tau * y;
    Eigen::MatrixXd w_new, what_new;
    if (prob.has_w_prox) {
      w_new = poly.project((v_w / tau + prob.rho * prob.w_center) /
                           (1.0 / tau + prob.rho));
    } else {
      w_new = poly.project(v_w);
    }
    what_new = poly.project((v_what / tau + prob.rho * prob.what_center) /
                            (1.0 / tau + prob.rho));

    w_bar = 2.0 * w_new - w;
    what_bar = 2.0 * what_new - what;
    w = std::move(w_new);
    what = std::move(what_new);

    const double obj = block_objective(prob, w, what);
    if (obj < best_obj) {
      best_obj = obj;
      cur.w = w;
      cur.what = what;
    }
  }
  cur.dual = std::move(y);
  fill_switch_vars(prob, cur);
  return cur;
}

std::pair<double, double> residuals(const AdmmState& state) {
  const int T = static_cast<int>(state.w.size());
  double primal_sq = 0.0;
  for (int t = 1; t < T; ++t) {
    primal_sq += (state.w[static_cast<size_t>(t)] - state.z[static_cast<size_t>(t)]).squaredNorm();
    primal_sq += (state.what[static_cast<size_t>(t)] - state.z[static_cast<size_t>(t)]).squaredNorm();
  }
  double dual = std::numeric_limits<double>::infinity();
  if (!state.z_prev.empty()) {
    double dual_sq = 0.0;
    for (int t = 1; t < T; ++t)
      dual_sq += (state.z[static_cast<size_t>(t)] - state.z_prev[static_cast<size_t>(t)]).squaredNorm();
    dual = state.rho * std::sqrt(dual_sq);
  }
  return {std::sqrt(primal_sq), dual};
}

AdmmResult admm_metric(const TrajectorySet& x, const TrajectorySet& y,
                       const MetricParams& params, const AdmmConfig& config,
                       const AdmmState* warm_start) {
  require_compatible(x, y);
  params.validate();
  config.validate();
  const int T = x.window;
  const int n_x = x.size();
  const int n_y = y.size();
  const double sw = 0.5 * std::pow(params.gamma, params.p);
  const WeightPolytope poly(n_x, n_y);

  std::vector<Eigen::MatrixXd> d(static_cast<size_t>(T));
  for (int t = 0; t < T; ++t) d[static_cast<size_t>(t)] = cost_matrix(x, y, t + 1, params);

  AdmmResult res;

  auto evaluate = [&](const std::vector<Eigen::MatrixXd>& raw_weights, double tol) {
    std::vector<WeightMatrix> weights;
    weights.reserve(static_cast<size_t>(T));
    for (const auto& w : raw_weights) weights.push_back(poly.project(w, tol, 2000));
    const double raw = raw_objective(weights, x, y, params);
    if (res.weights.empty() || raw < res.raw_cost) {
      res.raw_cost = raw;
      res.weights = std::move(weights);
    }
  };

  if (T == 1) {
    // no switching terms: proximal-point iterations on the single block
    Eigen::MatrixXd w = poly.project(
        Eigen::MatrixXd::Constant(n_x + 1, n_y + 1, 1.0 / (std::max(n_x, n_y) + 1)));
    double prev_obj = std::numeric_limits<double>::infinity();
    int it = 0;
    for (; it < config.max_admm_iters; ++it) {
      w = poly.project(w - d[0] / config.rho, 1e-12, 2000);
      const double obj = d[0].cwiseProduct(w).sum();
      if (std::abs(prev_obj - obj) <= 1e-12 * (1.0 + std::abs(obj))) {
        res.converged = true;
        break;
      }
      prev_obj = obj;
    }
    res.iterations = it + 1;
    evaluate({w}, 1e-12);
    res.value = std::pow(std::max(0.0, res.raw_cost), 1.0 / params.p);
    res.decomposition = decompose(res.weights, x, y, params);
    return res;
  }

  AdmmState state;
  if (warm_start) {
    state = *warm_start;
    state.rho = config.rho;
  } else {
    const std::vector<Eigen::MatrixXd> init =
        greedy_weights(d, n_x, n_y, std::pow(params.gamma, params.p));
    const Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(n_x + 1, n_y + 1);
    state.w = init;
    state.what = init;
    state.z = init;
    state.alpha.assign(static_cast<size_t>(T), zero);
    state.beta.assign(static_cast<size_t>(T), zero);
    state.rho = config.rho;
    evaluate(init, 1e-12);
  }

  const double threshold =
      config.residual_factor * std::sqrt(static_cast<double>((n_x + 1) * (n_y + 1)));

  // per-stage coupling multipliers kept across outer iterations so the
  // inexact block solves become asymptotically exact
  std::vector<Eigen::MatrixXd> stage_dual(static_cast<size_t>(T - 1));

  int iter = 0;
  for (; iter < config.max_admm_iters; ++iter) {
    // stage blocks k = 1..T-1 (0-based t = 0..T-2), each owning W^k and the
    // copy of W^{k+1}
    for (int t = 0; t <= T - 2; ++t) {
      BlockProblem bp;
      bp.lin_w = &d[static_cast<size_t>(t)];
      bp.switch_weight = sw;
      bp.rho = config.rho;
      if (t > 0) {
        bp.has_w_prox = true;
        bp.w_center = state.z[static_cast<size_t>(t)] - state.alpha[static_cast<size_t>(t)] / config.rho;
      }
      bp.has_what = true;
      bp.what_center =
          state.z[static_cast<size_t>(t) + 1] - state.beta[static_cast<size_t>(t) + 1] / config.rho;
      BlockVars start;
      start.w = state.w[static_cast<size_t>(t)];
      start.what = state.what[static_cast<size_t>(t) + 1];
      start.dual = std::move(stage_dual[static_cast<size_t>(t)]);
      BlockVars out = qp_block_solve(bp, std::move(start), config.max_qp_iters, poly);
      state.w[static_cast<size_t>(t)] = std::move(out.w);
      state.what[static_cast<size_t>(t) + 1] = std::move(out.what);
      stage_dual[static_cast<size_t>(t)] = std::move(out.dual);
    }
    // final block W^T
    {
      BlockProblem bp;
      bp.lin_w = &d[static_cast<size_t>(T) - 1];
      bp.rho = config.rho;
      bp.has_w_prox = true;
      bp.w_center =
          state.z[static_cast<size_t>(T) - 1] - state.alpha[static_cast<size_t>(T) - 1] / config.rho;
      BlockVars start;
      start.w = state.w[static_cast<size_t>(T) - 1];
      BlockVars out = qp_block_solve(bp, std::move(start), config.max_qp_iters, poly);
      state.w[static_cast<size_t>(T) - 1] = std::move(out.w);
    }

    // consensus averaging and dual ascent
    state.z_prev = state.z;
    for (int t = 1; t < T; ++t) {
      state.z[static_cast<size_t>(t)] =
          0.5 * (state.w[static_cast<size_t>(t)] + state.what[static_cast<size_t>(t)] +
                 state.alpha[static_cast<size_t>(t)] / config.rho +
                 state.beta[static_cast<size_t>(t)] / config.rho);
    }
    const auto [primal, dual] = residuals(state);
    for (int t = 1; t < T; ++t) {
      state.alpha[static_cast<size_t>(t)] +=
          config.rho * (state.w[static_cast<size_t>(t)] - state.z[static_cast<size_t>(t)]);
      state.beta[static_cast<size_t>(t)] +=
          config.rho * (state.what[static_cast<size_t>(t)] - state.z[static_cast<size_t>(t)]);
    }
    state.iteration = iter + 1;
    res.primal_residual = primal;
    res.dual_residual = dual;

    // candidate value from the current consensus iterates
    std::vector<Eigen::MatrixXd> raw_weights;
    raw_weights.reserve(static_cast<size_t>(T));
    raw_weights.push_back(state.w[0]);
    for (int t = 1; t < T; ++t) raw_weights.push_back(state.z[static_cast<size_t>(t)]);
    evaluate(raw_weights, 1e-10);

    if (primal <= threshold && dual <= threshold) {
      res.converged = true;
      ++iter;
      break;
    }
  }
  res.iterations = iter;

  // final value from a tightly projected copy of the best iterate
  std::vector<Eigen::MatrixXd> final_raw = res.weights;
  res.weights.clear();
  res.raw_cost = 0.0;
  evaluate(final_raw, 1e-12);
  res.value = std::pow(std::max(0.0, res.raw_cost), 1.0 / params.p);
  res.decomposition = decompose(res.weights, x, y, params);
  return res;
}

}  // namespace trajmetric
