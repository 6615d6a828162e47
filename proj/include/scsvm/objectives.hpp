#pragma once

#include "scsvm/types.hpp"

namespace scsvm {

// margins z_i = <col_i, w> = y_i <x_i, w>
dvec margins(const Dataset& data, const dvec& w);

// P(w) = (lambda/2)||w||^2 + (1/n) sum_i max(0, 1 - z_i)
double primal_objective(const dvec& w, double lambda, const Dataset& data);

// lambda*w - (1/n) sum over margin violators (z_i < 1, strictly) of col_i.
// On B cap S with feature norms <= R the norm is at most sqrt(2*lambda) + R.
dvec primal_subgradient(const dvec& w, double lambda, const Dataset& data);

// D(alpha) = -(lambda/2)||w(alpha)||^2 + (1/n)<1, alpha>, w(alpha) from caches
double dual_objective(const DualState& state, double lambda);

// P(w(alpha)) - D(alpha). Values in [-1e-10, 0) clamp to 0 (accumulation
// noise); below that the caches are inconsistent and we refuse.
double duality_gap(const DualState& state, const Dataset& data, double lambda);

inline constexpr double kGapFloor = -1e-10;

void check_alpha_box(const dvec& alpha);

PrimalModel recover_weights(const DualState& state, const SignMask& mask,
                            double lambda);

}  // namespace scsvm
