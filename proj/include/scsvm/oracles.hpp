#pragma once

#include "scsvm/types.hpp"

namespace scsvm {

// Slow-but-sure references for the verify command and the test suite.
// None of these reuse the closed-form line-search or LMO code paths.

struct OracleConfig {
  std::int64_t grid_points = 100000;
  double fd_step = 1e-6;
  std::int64_t reference_iters = 10000;
  double reference_gap = 1e-9;
};

struct GridSearchResult {
  double eta = 0.0;
  double value = 0.0;
};

// Evaluates D(alpha + eta q) on a uniform grid directly from the projection
// definition (O(d) per point after two matrix products) and returns the best.
GridSearchResult grid_line_search(const dvec& alpha, const dvec& q,
                                  const Dataset& data, const SignMask& mask,
                                  double lambda, std::int64_t grid_points);

// Maximizes <grad D(alpha), u> over all 2^n corners by enumeration (n <= 20).
// Ties break toward the lowest corner index (u read as a binary counter).
dvec exhaustive_lmo(const dvec& alpha, const Dataset& data,
                    const SignMask& mask, double lambda);

struct ReferenceResult {
  double P_star = 0.0;
  double D_star = 0.0;
  double gap = 0.0;
  bool converged = false;  // gap <= reference_gap reached
  dvec alpha;
};

// Tight optimum estimates: Frank-Wolfe until the gap target or the iteration
// budget, then coordinate-ascent polishing (single-coordinate steps with the
// same exact step rule) to push the certificate to reference_gap.
ReferenceResult reference_optimum(const Dataset& data, const SignMask& mask,
                                  double lambda, const OracleConfig& cfg = {});

// Unconstrained-case reference (sigma must be all zero): dual coordinate
// ascent with the closed-form per-coordinate update. Independent of the
// Frank-Wolfe path.
ReferenceResult dual_cd_reference(const Dataset& data, double lambda,
                                  std::int64_t max_sweeps = 2000,
                                  double gap_target = 1e-10);

// Seeded test instance: n in [20,60], d in [5,30], unit-norm rows (R = 1),
// mild class structure, each feature constrained with probability 1/2,
// lambda log-uniform in [10^-1.3, 1].
struct RandomInstance {
  Dataset data;
  SignMask mask;
  double lambda = 0.0;
};
RandomInstance random_instance(std::uint64_t seed);

}  // namespace scsvm
