#pragma once

#include "scsvm/types.hpp"

namespace scsvm {

struct FwConfig {
  double lambda = 1.0;
  double epsilon = 1e-3;        // target duality gap
  std::int64_t max_iter = 1000;
  dvec alpha0;                  // empty = start from zero
  // trace schedule: state indices (number of completed steps) to record;
  // empty = record every state. The final state is always recorded.
  std::vector<std::int64_t> schedule;
  std::int64_t refresh_stride = 32;  // iterations between cache rebuilds
};

struct FwResult {
  PrimalModel model;
  DualState state;
  std::vector<TraceRecord> trace;
  bool certified = false;       // duality gap <= epsilon on fresh caches
  std::int64_t iterations = 0;  // line-search steps taken
  double final_gap = 0.0;
};

// Direction-finding corner: u_i = 1 iff margin z_i < 1 (ties at exactly 1
// give 0). Maximizes <grad D, u> over the box; O(nd) via the cached w.
dvec lmo(const DualState& state, const Dataset& data);

// grad D(alpha)_i = (1/n)(1 - z_i) with z = X^T w(alpha)
dvec dual_gradient(const DualState& state, const Dataset& data);

FwResult fw_train(const Dataset& data, const SignMask& mask,
                  const FwConfig& cfg);

// Iterations sufficient for an epsilon-accurate dual solution:
// ceil(2R^2/(lambda epsilon) - 2), clamped at 0.
std::int64_t fw_iteration_bound(double lambda, double R, double epsilon);

// Curvature bound R^2/lambda; the dual error after T steps is at most
// 2*curvature/(T+2).
double fw_curvature_bound(double lambda, double R);

}  // namespace scsvm
