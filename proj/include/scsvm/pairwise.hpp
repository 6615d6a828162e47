#pragma once

#include "scsvm/data_io.hpp"

namespace scsvm {

// Similarity-as-features construction: sequences reordered positives-first,
// example j's feature vector is similarity column j of the reordered matrix,
// weights on positive columns constrained >= 0 and on negative columns <= 0.
// The data matrix is square (d = n).
struct PairwiseData {
  Dataset data;
  SignMask mask;
  RawDataset raw;              // reordered, pre-negation (for serialization)
  std::vector<int> order;      // order[new_pos] = original sequence id
  Eigen::Index n_pos = 0;
};

PairwiseData build_pairwise(const SimilarityMatrix& sim);

}  // namespace scsvm
