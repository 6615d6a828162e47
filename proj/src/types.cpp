#include "scsvm/types.hpp"

#include "scsvm/projection.hpp"

#include <algorithm>
#include <cmath>

namespace scsvm {

void Dataset::validate() const {
  if (n() < 1 || d() < 1) throw std::invalid_argument("dataset: need n >= 1 and d >= 1");
  if (static_cast<Eigen::Index>(labels.size()) != n())
    throw std::invalid_argument("dataset: label count does not match column count");
  for (double y : labels)
    if (y != 1.0 && y != -1.0)
      throw std::invalid_argument("dataset: labels must be -1 or +1");
  if (!X.allFinite()) throw std::invalid_argument("dataset: non-finite feature entry");
  if (recompute_R() > R + 1e-9 * (1.0 + R))
    throw std::invalid_argument("dataset: R smaller than a column norm");
}

bool SignMask::any_constraint() const {
  return std::any_of(sigma.begin(), sigma.end(), [](std::uint8_t s) { return s != 0; });
}

SignMask SignMask::make(Eigen::Index d, const std::vector<int>& pos,
                        const std::vector<int>& neg) {
  SignMask m;
  m.sigma.assign(static_cast<size_t>(d), 0);
  m.negated.assign(static_cast<size_t>(d), 0);
  for (int h : pos) {
    if (h < 0 || h >= d) throw std::invalid_argument("sign mask: index out of range");
    m.sigma[static_cast<size_t>(h)] = 1;
  }
  for (int h : neg) {
    if (h < 0 || h >= d) throw std::invalid_argument("sign mask: index out of range");
    if (m.sigma[static_cast<size_t>(h)])
      throw std::invalid_argument("sign mask: feature listed as both + and -");
    m.sigma[static_cast<size_t>(h)] = 1;
    m.negated[static_cast<size_t>(h)] = 1;
  }
  m.neg_idx = neg;
  std::sort(m.neg_idx.begin(), m.neg_idx.end());
  for (Eigen::Index h = 0; h < d; ++h)
    if (m.sigma[static_cast<size_t>(h)]) m.pos_idx.push_back(static_cast<int>(h));
  return m;
}

void SignMask::validate() const {
  if (sigma.size() != negated.size())
    throw std::invalid_argument("sign mask: sigma/negated size mismatch");
  for (size_t h = 0; h < sigma.size(); ++h)
    if (negated[h] && !sigma[h])
      throw std::invalid_argument("sign mask: negated feature must be constrained");
  for (int h : pos_idx)
    if (h < 0 || h >= static_cast<int>(sigma.size()) || !sigma[static_cast<size_t>(h)])
      throw std::invalid_argument("sign mask: pos_idx inconsistent with sigma");
}

dvec user_weights(const PrimalModel& model) {
  dvec w = model.w;
  for (size_t h = 0; h < model.mask.negated.size(); ++h)
    if (model.mask.negated[h]) w[static_cast<Eigen::Index>(h)] = -w[static_cast<Eigen::Index>(h)];
  return w;
}

void DualState::refresh(const Dataset& data, const SignMask& mask, double lambda) {
  v = data.X * alpha / (lambda * static_cast<double>(data.n()));
  w = project_sign_cone(v, mask);
}

double DualState::cache_error(const Dataset& data, double lambda) const {
  dvec fresh = data.X * alpha / (lambda * static_cast<double>(data.n()));
  return (v - fresh).cwiseAbs().maxCoeff();
}

}  // namespace scsvm
