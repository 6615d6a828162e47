#include "scsvm/line_search.hpp"

#include <algorithm>
#include <cmath>

namespace scsvm {

LineSearchInput make_line_search_input(const dvec& alpha, const dvec& q,
                                       const Dataset& data,
                                       const SignMask& mask, double lambda) {
  LineSearchInput in;
  double s = lambda * static_cast<double>(data.n());
  in.v0 = data.X * alpha / s;
  in.vq = data.X * q / s;
  in.sum_alpha = alpha.sum();
  in.sum_q = q.sum();
  in.mask = &mask;
  in.lambda = lambda;
  in.n = data.n();
  return in;
}

std::vector<double> breakpoints(const LineSearchInput& in) {
  std::vector<double> interior;
  for (int h : in.mask->pos_idx) {
    double vq = in.vq[h];
    if (vq == 0.0) continue;
    double r = -in.v0[h] / vq;
    if (r > kBreakpointMergeTol && r < 1.0 - kBreakpointMergeTol)
      interior.push_back(r);
  }
  std::sort(interior.begin(), interior.end());
  std::vector<double> theta{0.0};
  for (double r : interior)
    if (r - theta.back() > kBreakpointMergeTol) theta.push_back(r);
  theta.push_back(1.0);
  return theta;
}

std::vector<int> active_set(const LineSearchInput& in, Eigen::Index k,
                            const std::vector<double>& theta) {
  if (k < 0 || static_cast<size_t>(k + 1) >= theta.size())
    throw std::invalid_argument("active_set: interval index out of range");
  double mid = 0.5 * (theta[static_cast<size_t>(k)] + theta[static_cast<size_t>(k) + 1]);
  std::vector<int> H;
  for (Eigen::Index h = 0; h < in.v0.size(); ++h) {
    if (!in.mask->constrained(h))
      H.push_back(static_cast<int>(h));
    else if (in.v0[h] + mid * in.vq[h] > 0.0)
      H.push_back(static_cast<int>(h));
  }
  return H;
}

PiecewiseQuadratic build_quadratic(const LineSearchInput& in) {
  PiecewiseQuadratic pq;
  pq.theta = breakpoints(in);
  size_t L = pq.theta.size() - 1;

  // running sums over the active set; unconstrained coordinates never leave
  double S2 = 0.0, S1 = 0.0, S0 = 0.0;
  double mid0 = 0.5 * (pq.theta[0] + pq.theta[1]);
  // enter[j] / leave[j]: constrained coordinates toggling at theta[j]
  std::vector<std::vector<int>> enter(pq.theta.size()), leave(pq.theta.size());
  for (Eigen::Index h = 0; h < in.v0.size(); ++h) {
    if (!in.mask->constrained(h)) {
      S2 += in.vq[h] * in.vq[h];
      S1 += in.vq[h] * in.v0[h];
      S0 += in.v0[h] * in.v0[h];
      continue;
    }
    if (in.v0[h] + mid0 * in.vq[h] > 0.0) {
      S2 += in.vq[h] * in.vq[h];
      S1 += in.vq[h] * in.v0[h];
      S0 += in.v0[h] * in.v0[h];
      if (in.vq[h] < 0.0) {
        // will cross zero downward at its ratio, if inside (0,1)
        double r = -in.v0[h] / in.vq[h];
        auto it = std::lower_bound(pq.theta.begin() + 1, pq.theta.end() - 1,
                                   r - kBreakpointMergeTol);
        if (it != pq.theta.end() - 1 && std::abs(*it - r) <= kBreakpointMergeTol)
          leave[static_cast<size_t>(it - pq.theta.begin())].push_back(static_cast<int>(h));
      }
    } else if (in.vq[h] > 0.0) {
      double r = -in.v0[h] / in.vq[h];
      auto it = std::lower_bound(pq.theta.begin() + 1, pq.theta.end() - 1,
                                 r - kBreakpointMergeTol);
      if (it != pq.theta.end() - 1 && std::abs(*it - r) <= kBreakpointMergeTol)
        enter[static_cast<size_t>(it - pq.theta.begin())].push_back(static_cast<int>(h));
    }
  }

  double lam = in.lambda;
  double invn = 1.0 / static_cast<double>(in.n);
  pq.coeffs.reserve(L);
  for (size_t k = 0; k < L; ++k) {
    if (k > 0) {
      for (int h : enter[k]) {
        S2 += in.vq[h] * in.vq[h];
        S1 += in.vq[h] * in.v0[h];
        S0 += in.v0[h] * in.v0[h];
      }
      for (int h : leave[k]) {
        S2 -= in.vq[h] * in.vq[h];
        S1 -= in.vq[h] * in.v0[h];
        S0 -= in.v0[h] * in.v0[h];
      }
    }
    // S2, S0 are sums of squares; kill the tiny negative drift the
    // subtractive updates can leave so concavity holds exactly
    PiecewiseQuadratic::Coeffs c;
    c.a = -0.5 * lam * std::max(S2, 0.0);
    c.b = in.sum_q * invn - lam * S1;
    c.c = in.sum_alpha * invn - 0.5 * lam * std::max(S0, 0.0);
    pq.coeffs.push_back(c);
  }
  return pq;
}

Eigen::Index PiecewiseQuadratic::interval_of(double eta) const {
  if (eta < 0.0 || eta > 1.0)
    throw std::invalid_argument("piecewise quadratic: eta outside [0,1]");
  auto it = std::upper_bound(theta.begin(), theta.end(), eta);
  Eigen::Index k = static_cast<Eigen::Index>(it - theta.begin()) - 1;
  if (k >= static_cast<Eigen::Index>(coeffs.size())) k = static_cast<Eigen::Index>(coeffs.size()) - 1;
  if (k < 0) k = 0;
  return k;
}

double PiecewiseQuadratic::value(double eta) const {
  auto k = static_cast<size_t>(interval_of(eta));
  return (coeffs[k].a * eta + coeffs[k].b) * eta + coeffs[k].c;
}

double PiecewiseQuadratic::derivative(double eta) const {
  auto k = static_cast<size_t>(interval_of(eta));
  return 2.0 * coeffs[k].a * eta + coeffs[k].b;
}

double maximize(const PiecewiseQuadratic& pq) {
  size_t L = pq.coeffs.size();
  if (L == 0 || pq.theta.size() != L + 1)
    throw std::invalid_argument("maximize: malformed piecewise quadratic");
  if (pq.coeffs[0].b <= 0.0) return 0.0;  // nonpositive slope at 0
  if (2.0 * pq.coeffs[L - 1].a + pq.coeffs[L - 1].b >= 0.0) return 1.0;
  for (size_t k = 0; k < L; ++k) {
    double right = 2.0 * pq.coeffs[k].a * pq.theta[k + 1] + pq.coeffs[k].b;
    if (right <= 0.0) {
      if (pq.coeffs[k].a < 0.0) {
        double eta = -pq.coeffs[k].b / (2.0 * pq.coeffs[k].a);
        return std::clamp(eta, pq.theta[k], pq.theta[k + 1]);
      }
      return pq.theta[k];  // flat piece; slope must be zero here
    }
  }
  throw std::runtime_error("maximize: no sign change found; concavity violated");
}

double exact_line_search(const LineSearchInput& in) {
  return maximize(build_quadratic(in));
}

}  // namespace scsvm
