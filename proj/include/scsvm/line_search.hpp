#pragma once

#include "scsvm/types.hpp"

namespace scsvm {

// Inputs for maximizing zeta(eta) = D(alpha + eta q) over [0,1].
// v0_h = <f_h, alpha>/(lambda n) and vq_h = <f_h, q>/(lambda n) where f_h is
// feature row h of X^T; the pre-projection vector at eta is v0 + eta*vq.
struct LineSearchInput {
  dvec v0;
  dvec vq;
  double sum_alpha = 0.0;  // <1, alpha>
  double sum_q = 0.0;      // <1, u - alpha>
  const SignMask* mask = nullptr;
  double lambda = 0.0;
  Eigen::Index n = 0;
};

LineSearchInput make_line_search_input(const dvec& alpha, const dvec& q,
                                       const Dataset& data,
                                       const SignMask& mask, double lambda);

// zeta restricted to interval k of [0,1] is a_k eta^2 + b_k eta + c_k.
struct PiecewiseQuadratic {
  std::vector<double> theta;  // sorted endpoints, theta.front()=0, theta.back()=1
  struct Coeffs {
    double a, b, c;
  };
  std::vector<Coeffs> coeffs;  // one per interval, coeffs.size()+1 == theta.size()

  double value(double eta) const;       // evaluate on the owning interval
  double derivative(double eta) const;  // one-sided at interior endpoints
  Eigen::Index interval_of(double eta) const;
};

// Candidate segment endpoints: zeros of the constrained coordinates'
// linear functions v0_h + eta*vq_h that fall inside (0,1), plus {0,1}.
// Near-duplicates within 1e-12 merge (boundaries win).
std::vector<double> breakpoints(const LineSearchInput& in);

inline constexpr double kBreakpointMergeTol = 1e-12;

// Coordinates surviving the cone projection inside interval k: the
// unconstrained ones plus constrained h with v0_h + mid*vq_h > 0 at the
// interval midpoint.
std::vector<int> active_set(const LineSearchInput& in, Eigen::Index k,
                            const std::vector<double>& theta);

// Builds all interval coefficients. Uses running sums updated at each
// breakpoint (equivalent to the per-interval midpoint rule, O(d log d)).
PiecewiseQuadratic build_quadratic(const LineSearchInput& in);

// Exact maximizer of a concave piecewise quadratic on [0,1].
double maximize(const PiecewiseQuadratic& pq);

// Convenience: full exact line search for one Frank-Wolfe step.
double exact_line_search(const LineSearchInput& in);

}  // namespace scsvm
