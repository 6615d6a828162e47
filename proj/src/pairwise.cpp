#include "scsvm/pairwise.hpp"

namespace scsvm {

PairwiseData build_pairwise(const SimilarityMatrix& sim) {
  const Eigen::Index n = sim.S.rows();
  if (n < 2) throw std::invalid_argument("build_pairwise: need at least 2 sequences");
  if (sim.S.cols() != n) throw std::invalid_argument("build_pairwise: matrix must be square");

  PairwiseData out;
  for (Eigen::Index i = 0; i < n; ++i)
    if (sim.labels[static_cast<size_t>(i)] > 0) out.order.push_back(static_cast<int>(i));
  out.n_pos = static_cast<Eigen::Index>(out.order.size());
  for (Eigen::Index i = 0; i < n; ++i)
    if (sim.labels[static_cast<size_t>(i)] < 0) out.order.push_back(static_cast<int>(i));
  if (out.n_pos == 0 || out.n_pos == n)
    throw std::invalid_argument("build_pairwise: both classes must be present");

  // reordered similarities: example j's features are similarity column j,
  // i.e. raw(i, j) = S(order[i], order[j]); the data matrix is square
  out.raw.features = dmat(n, n);
  out.raw.labels.resize(static_cast<size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    out.raw.labels[static_cast<size_t>(i)] = sim.labels[static_cast<size_t>(out.order[static_cast<size_t>(i)])];
    for (Eigen::Index j = 0; j < n; ++j)
      out.raw.features(i, j) = sim.S(out.order[static_cast<size_t>(i)], out.order[static_cast<size_t>(j)]);
  }

  // weights on similarity-to-positive features constrained >= 0,
  // on similarity-to-negative features <= 0
  std::vector<int> pos, neg;
  for (Eigen::Index h = 0; h < out.n_pos; ++h) pos.push_back(static_cast<int>(h));
  for (Eigen::Index h = out.n_pos; h < n; ++h) neg.push_back(static_cast<int>(h));
  auto [data, mask] = apply_sign_mask(out.raw, pos, neg);
  out.data = std::move(data);
  out.mask = std::move(mask);
  return out;
}

}  // namespace scsvm
