#include "scsvm/objectives.hpp"

#include "scsvm/projection.hpp"

#include <cmath>

namespace scsvm {

dvec margins(const Dataset& data, const dvec& w) {
  if (w.size() != data.d())
    throw std::invalid_argument("margins: weight dimension mismatch");
  return data.X.transpose() * w;
}

double primal_objective(const dvec& w, double lambda, const Dataset& data) {
  if (!(lambda > 0.0)) throw std::invalid_argument("primal_objective: lambda must be positive");
  dvec z = margins(data, w);
  double hinge = (1.0 - z.array()).max(0.0).sum() / static_cast<double>(data.n());
  double val = 0.5 * lambda * w.squaredNorm() + hinge;
  if (!std::isfinite(val)) throw std::runtime_error("primal_objective: non-finite value");
  return val;
}

dvec primal_subgradient(const dvec& w, double lambda, const Dataset& data) {
  dvec z = margins(data, w);
  // violators use strict z < 1; margin exactly 1 contributes nothing
  dvec mask = (z.array() < 1.0).cast<double>();
  dvec g = lambda * w - (data.X * mask) / static_cast<double>(data.n());
  return g;
}

void check_alpha_box(const dvec& alpha) {
  for (Eigen::Index i = 0; i < alpha.size(); ++i)
    if (!(alpha[i] >= 0.0 && alpha[i] <= 1.0))
      throw std::invalid_argument("alpha outside [0,1]");
}

double dual_objective(const DualState& state, double lambda) {
  check_alpha_box(state.alpha);
  double n = static_cast<double>(state.alpha.size());
  return -0.5 * lambda * state.w.squaredNorm() + state.alpha.sum() / n;
}

double duality_gap(const DualState& state, const Dataset& data, double lambda) {
  double P = primal_objective(state.w, lambda, data);
  double D = dual_objective(state, lambda);
  double g = P - D;
  if (g < 0.0) {
    if (g < kGapFloor)
      throw std::runtime_error("duality_gap: negative beyond the numerical floor; dual caches inconsistent");
    g = 0.0;
  }
  return g;
}

PrimalModel recover_weights(const DualState& state, const SignMask& mask,
                            double lambda) {
  PrimalModel m;
  m.w = state.w;
  m.lambda = lambda;
  m.mask = mask;
  m.solver = "fw";
  return m;
}

}  // namespace scsvm
