#include "scsvm/fw.hpp"

#include "scsvm/line_search.hpp"
#include "scsvm/objectives.hpp"
#include "scsvm/projection.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace scsvm {

dvec lmo(const DualState& state, const Dataset& data) {
  dvec z = data.X.transpose() * state.w;
  return (z.array() < 1.0).cast<double>();
}

dvec dual_gradient(const DualState& state, const Dataset& data) {
  dvec z = data.X.transpose() * state.w;
  return (1.0 - z.array()) / static_cast<double>(data.n());
}

std::int64_t fw_iteration_bound(double lambda, double R, double epsilon) {
  if (!(lambda > 0.0) || !(R > 0.0) || !(epsilon > 0.0))
    throw std::invalid_argument("fw_iteration_bound: arguments must be positive");
  double t = 2.0 * R * R / (lambda * epsilon) - 2.0;
  if (t <= 0.0) return 0;
  return static_cast<std::int64_t>(std::ceil(t));
}

double fw_curvature_bound(double lambda, double R) {
  if (!(lambda > 0.0)) throw std::invalid_argument("fw_curvature_bound: lambda must be positive");
  return R * R / lambda;
}

namespace {

struct Objectives {
  double P, D, gap;
};

Objectives evaluate(const DualState& st, const Dataset& data, double lambda,
                    const dvec& z, std::int64_t iter) {
  double n = static_cast<double>(data.n());
  double wn = st.w.squaredNorm();
  double P = 0.5 * lambda * wn + (1.0 - z.array()).max(0.0).sum() / n;
  double D = -0.5 * lambda * wn + st.alpha.sum() / n;
  if (!std::isfinite(P) || !std::isfinite(D))
    throw std::runtime_error("fw_train: non-finite objective at iteration " +
                             std::to_string(iter));
  return {P, D, P - D};
}

}  // namespace

FwResult fw_train(const Dataset& data, const SignMask& mask, const FwConfig& cfg) {
  if (!(cfg.lambda > 0.0)) throw std::invalid_argument("fw_train: lambda must be positive");
  if (!(cfg.epsilon > 0.0)) throw std::invalid_argument("fw_train: epsilon must be positive");
  if (cfg.max_iter < 1) throw std::invalid_argument("fw_train: max_iter must be >= 1");
  if (mask.d() != data.d()) throw std::invalid_argument("fw_train: mask dimension mismatch");

  const auto n = data.n();
  const double lambda = cfg.lambda;
  const double lamn = lambda * static_cast<double>(n);
  const std::int64_t refresh = std::max<std::int64_t>(1, cfg.refresh_stride);

  DualState st;
  if (cfg.alpha0.size() > 0) {
    if (cfg.alpha0.size() != n) throw std::invalid_argument("fw_train: alpha0 size mismatch");
    check_alpha_box(cfg.alpha0);
    st.alpha = cfg.alpha0;
  } else {
    st.alpha = dvec::Zero(n);
  }
  st.refresh(data, mask, lambda);

  const bool record_all = cfg.schedule.empty();
  auto on_schedule = [&](std::int64_t idx) {
    if (record_all) return true;
    return std::binary_search(cfg.schedule.begin(), cfg.schedule.end(), idx);
  };

  FwResult res;
  auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration_cast<std::chrono::nanoseconds>(
               std::chrono::steady_clock::now() - t0)
        .count();
  };
  auto record = [&](std::int64_t iter, const Objectives& o) {
    double g = std::max(o.gap, 0.0);  // drift can dip a hair below zero
    TraceRecord r{iter, o.P, o.D, g, elapsed()};
    if (!res.trace.empty() && res.trace.back().iter == iter)
      res.trace.back() = r;
    else
      res.trace.push_back(r);
  };

  dvec z;
  Objectives obj{0.0, 0.0, 0.0};
  bool done = false;
  std::int64_t steps = 0;
  int zero_steps = 0;

  for (std::int64_t t = 1; t <= cfg.max_iter && !done; ++t) {
    const std::int64_t state_idx = t - 1;
    if (state_idx > 0 && state_idx % refresh == 0)
      st.refresh(data, mask, lambda);
    else
      st.w = project_sign_cone(st.v, mask);
    z = data.X.transpose() * st.w;
    obj = evaluate(st, data, lambda, z, state_idx);
    if (obj.gap < 0.0) {  // stale caches; rebuild before trusting anything
      st.refresh(data, mask, lambda);
      z = data.X.transpose() * st.w;
      obj = evaluate(st, data, lambda, z, state_idx);
      if (obj.gap < kGapFloor)
        throw std::runtime_error("fw_train: duality gap below the numerical floor");
    }
    if (on_schedule(state_idx)) record(state_idx, obj);

    if (obj.gap <= cfg.epsilon) {
      st.refresh(data, mask, lambda);  // certify on fresh caches only
      z = data.X.transpose() * st.w;
      obj = evaluate(st, data, lambda, z, state_idx);
      if (obj.gap <= cfg.epsilon) {
        record(state_idx, obj);
        res.certified = true;
        steps = state_idx;
        done = true;
        break;
      }
      if (on_schedule(state_idx)) record(state_idx, obj);
    }

    dvec u = (z.array() < 1.0).cast<double>();
    dvec q = u - st.alpha;
    if ((q.array() == 0.0).all()) {
      st.refresh(data, mask, lambda);
      z = data.X.transpose() * st.w;
      obj = evaluate(st, data, lambda, z, state_idx);
      record(state_idx, obj);
      res.certified = obj.gap <= cfg.epsilon;
      steps = state_idx;
      done = true;
      break;
    }

    LineSearchInput in;
    in.v0 = st.v;
    in.vq = data.X * q / lamn;
    in.sum_alpha = st.alpha.sum();
    in.sum_q = q.sum();
    in.mask = &mask;
    in.lambda = lambda;
    in.n = n;
    double eta = exact_line_search(in);

    if (eta == 0.0) {
      // no ascent along the oracle direction: either converged or the cache
      // drifted; refresh and allow one retry before stopping
      if (++zero_steps >= 2) {
        st.refresh(data, mask, lambda);
        z = data.X.transpose() * st.w;
        obj = evaluate(st, data, lambda, z, state_idx);
        record(state_idx, obj);
        res.certified = obj.gap <= cfg.epsilon;
        steps = state_idx;
        done = true;
        break;
      }
      st.refresh(data, mask, lambda);
      continue;
    }
    zero_steps = 0;

    st.alpha += eta * q;
    st.v += eta * in.vq;
    steps = t;
  }

  if (!done) {  // budget exhausted; report the final state honestly
    st.refresh(data, mask, lambda);
    z = data.X.transpose() * st.w;
    obj = evaluate(st, data, lambda, z, cfg.max_iter);
    record(cfg.max_iter, obj);
    res.certified = obj.gap <= cfg.epsilon;
    steps = cfg.max_iter;
  }

  res.state = st;
  res.iterations = steps;
  res.final_gap = std::max(obj.gap, 0.0);
  res.model = recover_weights(st, mask, lambda);
  res.model.solver = "fw";
  res.model.iterations = steps;
  res.model.final_gap = res.final_gap;
  res.model.certified = res.certified;
  return res;
}

}  // namespace scsvm
