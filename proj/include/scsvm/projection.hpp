#pragma once

#include "scsvm/types.hpp"

namespace scsvm {

// Euclidean projection onto the feasible cone S = {w : sigma .* w >= 0}:
// clips constrained coordinates at zero, leaves the rest alone.
dvec project_sign_cone(const dvec& v, const SignMask& mask);

// Euclidean projection onto the ball of radius sqrt(2/lambda).
dvec project_ball(const dvec& v, double lambda);

double ball_radius(double lambda);

}  // namespace scsvm
