#include "scsvm/projection.hpp"

#include <cmath>

namespace scsvm {

dvec project_sign_cone(const dvec& v, const SignMask& mask) {
  if (v.size() != mask.d())
    throw std::invalid_argument("project_sign_cone: dimension mismatch");
  dvec out = v;
  for (Eigen::Index h = 0; h < v.size(); ++h)
    if (mask.constrained(h) && out[h] < 0.0) out[h] = 0.0;
  return out;
}

double ball_radius(double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("ball_radius: lambda must be positive");
  return std::sqrt(2.0 / lambda);
}

dvec project_ball(const dvec& v, double lambda) {
  double r = ball_radius(lambda);
  double nrm = v.norm();
  if (nrm <= r) return v;
  return v * (r / nrm);
}

}  // namespace scsvm
