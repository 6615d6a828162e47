#pragma once

#include "scsvm/types.hpp"

namespace scsvm {

struct PgConfig {
  double lambda = 1.0;
  std::int64_t max_iter = 1000;
  // iterations at which P is evaluated and recorded (sorted, <= max_iter);
  // empty = record the final iteration only
  std::vector<std::int64_t> schedule;
  std::uint64_t seed = 0;  // reserved; the solver is deterministic
};

struct PgResult {
  PrimalModel model;  // recorded iterate with minimum P
  std::vector<TraceRecord> trace;
  std::int64_t best_iter = 0;
  double best_primal = 0.0;
};

// Projected subgradient descent: w <- proj_ball(proj_cone(w - (1/lambda t) g)),
// starting from w = 0, step 1/(lambda t), full-batch subgradient.
PgResult pg_train(const Dataset& data, const SignMask& mask,
                  const PgConfig& cfg);

// Primal error bound after T iterations: (sqrt(2 lambda) + R)^2 log(T)/(lambda T).
// Takes T as a real so the formula is testable at non-integer points.
double pg_bound(double lambda, double R, double T);

}  // namespace scsvm
