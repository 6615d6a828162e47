#include "scsvm/oracles.hpp"

#include "scsvm/data_io.hpp"
#include "scsvm/fw.hpp"
#include "scsvm/line_search.hpp"
#include "scsvm/objectives.hpp"
#include "scsvm/projection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace scsvm {

RandomInstance random_instance(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> nd(20, 60), dd(5, 30);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  const int n = nd(rng), d = dd(rng);

  dvec mu(d);
  for (int h = 0; h < d; ++h) mu[h] = normal(rng);
  dmat rows(n, d);
  std::vector<double> labels(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    double y = unif(rng) < 0.5 ? -1.0 : 1.0;
    labels[static_cast<size_t>(i)] = y;
    for (int h = 0; h < d; ++h) rows(i, h) = normal(rng) + 0.5 * mu[h] * y;
    double nrm = rows.row(i).norm();
    if (nrm == 0.0) nrm = 1.0;
    rows.row(i) /= nrm;
  }

  std::vector<int> pos;
  for (int h = 0; h < d; ++h)
    if (unif(rng) < 0.5) pos.push_back(h);

  RandomInstance inst;
  RawDataset raw{std::move(rows), std::move(labels)};
  auto [data, mask] = apply_sign_mask(raw, pos, {});
  inst.data = std::move(data);
  inst.mask = std::move(mask);
  inst.lambda = std::pow(10.0, -1.3 + 1.3 * unif(rng));
  return inst;
}

GridSearchResult grid_line_search(const dvec& alpha, const dvec& q,
                                  const Dataset& data, const SignMask& mask,
                                  double lambda, std::int64_t grid_points) {
  if ((q.array() == 0.0).all())
    throw std::invalid_argument("grid_line_search: q must be nonzero");
  if (grid_points < 2) throw std::invalid_argument("grid_line_search: need >= 2 points");
  const double s = lambda * static_cast<double>(data.n());
  dvec v0 = data.X * alpha / s;
  dvec vq = data.X * q / s;
  const double sa = alpha.sum(), sq = q.sum();
  const double invn = 1.0 / static_cast<double>(data.n());

  GridSearchResult best{0.0, -std::numeric_limits<double>::infinity()};
  for (std::int64_t g = 0; g <= grid_points; ++g) {
    double eta = static_cast<double>(g) / static_cast<double>(grid_points);
    double wsq = 0.0;
    for (Eigen::Index h = 0; h < v0.size(); ++h) {
      double pre = v0[h] + eta * vq[h];
      double w = (mask.constrained(h) && pre < 0.0) ? 0.0 : pre;
      wsq += w * w;
    }
    double val = -0.5 * lambda * wsq + (sa + eta * sq) * invn;
    if (val > best.value) best = {eta, val};
  }
  return best;
}

dvec exhaustive_lmo(const dvec& alpha, const Dataset& data, const SignMask& mask,
                    double lambda) {
  const Eigen::Index n = data.n();
  if (n > 20) throw std::invalid_argument("exhaustive_lmo: n must be <= 20");
  DualState st;
  st.alpha = alpha;
  st.refresh(data, mask, lambda);
  dvec z = data.X.transpose() * st.w;
  dvec g = (1.0 - z.array()) / static_cast<double>(n);

  std::uint64_t best_corner = 0;
  double best_val = -std::numeric_limits<double>::infinity();
  const std::uint64_t corners = 1ull << n;
  for (std::uint64_t c = 0; c < corners; ++c) {
    double val = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
      if (c & (1ull << i)) val += g[i];
    if (val > best_val) {  // strict: lowest corner index wins ties
      best_val = val;
      best_corner = c;
    }
  }
  dvec u = dvec::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i)
    if (best_corner & (1ull << i)) u[i] = 1.0;
  return u;
}

ReferenceResult reference_optimum(const Dataset& data, const SignMask& mask,
                                  double lambda, const OracleConfig& cfg) {
  FwConfig fc;
  fc.lambda = lambda;
  fc.epsilon = cfg.reference_gap;
  fc.max_iter = cfg.reference_iters;
  fc.schedule = {cfg.reference_iters};
  FwResult fw = fw_train(data, mask, fc);

  DualState st = fw.state;
  const Eigen::Index n = data.n();
  const double lamn = lambda * static_cast<double>(n);
  double gap = fw.final_gap;

  // exact-line-search coordinate ascent knocks out the zigzag tail that
  // plain Frank-Wolfe corners cause near fractional optima
  const int max_sweeps = 200;
  for (int sweep = 0; sweep < max_sweeps && gap > cfg.reference_gap; ++sweep) {
    for (Eigen::Index i = 0; i < n; ++i) {
      st.w = project_sign_cone(st.v, mask);
      double zi = data.X.col(i).dot(st.w);
      double target = zi < 1.0 ? 1.0 : 0.0;
      double qi = target - st.alpha[i];
      if (qi == 0.0) continue;
      LineSearchInput in;
      in.v0 = st.v;
      in.vq = data.X.col(i) * (qi / lamn);
      in.sum_alpha = st.alpha.sum();
      in.sum_q = qi;
      in.mask = &mask;
      in.lambda = lambda;
      in.n = n;
      double eta = exact_line_search(in);
      if (eta == 0.0) continue;
      st.alpha[i] += eta * qi;
      st.v += eta * in.vq;
    }
    st.refresh(data, mask, lambda);
    gap = duality_gap(st, data, lambda);
  }

  st.refresh(data, mask, lambda);
  ReferenceResult res;
  res.P_star = primal_objective(st.w, lambda, data);
  res.D_star = dual_objective(st, lambda);
  res.gap = duality_gap(st, data, lambda);
  res.converged = res.gap <= cfg.reference_gap;
  res.alpha = st.alpha;
  return res;
}

ReferenceResult dual_cd_reference(const Dataset& data, double lambda,
                                  std::int64_t max_sweeps, double gap_target) {
  // unconstrained dual only: w(alpha) = X alpha / (lambda n) with no projection
  const Eigen::Index n = data.n();
  const double lamn = lambda * static_cast<double>(n);
  dvec alpha = dvec::Zero(n);
  dvec xa = dvec::Zero(data.d());  // X alpha
  dvec colsq(n);
  for (Eigen::Index i = 0; i < n; ++i) colsq[i] = data.X.col(i).squaredNorm();

  SignMask none = SignMask::none(data.d());
  double gap = std::numeric_limits<double>::infinity();
  for (std::int64_t sweep = 0; sweep < max_sweeps && gap > gap_target; ++sweep) {
    for (Eigen::Index i = 0; i < n; ++i) {
      if (colsq[i] == 0.0) {
        // zero feature vector: hinge is constant 1, dual prefers alpha_i = 1
        alpha[i] = 1.0;
        continue;
      }
      double zi = data.X.col(i).dot(xa) / lamn;
      double delta = lamn * (1.0 - zi) / colsq[i];
      double ai = std::clamp(alpha[i] + delta, 0.0, 1.0);
      delta = ai - alpha[i];
      if (delta != 0.0) {
        alpha[i] = ai;
        xa += delta * data.X.col(i);
      }
    }
    xa = data.X * alpha;  // drift kill once per sweep
    DualState st;
    st.alpha = alpha;
    st.v = xa / lamn;
    st.w = st.v;
    gap = duality_gap(st, data, lambda);
  }

  DualState st;
  st.alpha = alpha;
  st.refresh(data, none, lambda);
  ReferenceResult res;
  res.P_star = primal_objective(st.w, lambda, data);
  res.D_star = dual_objective(st, lambda);
  res.gap = duality_gap(st, data, lambda);
  res.converged = res.gap <= gap_target;
  res.alpha = alpha;
  return res;
}

}  // namespace scsvm
