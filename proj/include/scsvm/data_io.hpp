#pragma once

#include "scsvm/types.hpp"

#include <utility>

namespace scsvm {

// Row-major raw examples, labels already mapped to {-1,+1}.
struct RawDataset {
  dmat features;               // n x d
  std::vector<double> labels;  // {-1, +1}

  Eigen::Index n() const { return features.rows(); }
  Eigen::Index d() const { return features.cols(); }
};

enum class DataFormat { SparseIndexValue, DenseCsv };

// sparse: "<label> <idx>:<val> ..." per line, 1-based indices.
// dense: CSV with header "label,f0,f1,...".
// labels01: accept {0,1} labels and map 0 -> -1.
// d_hint: declared dimension for sparse files (0 = infer from max index).
RawDataset load_dataset(const std::string& path, DataFormat format,
                        bool labels01 = false, Eigen::Index d_hint = 0);

void write_dataset(const std::string& path, const RawDataset& raw,
                   DataFormat format);

// Scales every example to unit Euclidean norm; afterwards R = 1.
RawDataset normalize_unit(const RawDataset& raw);

// Negates features in `neg`, sets sigma on pos+neg, builds signed columns.
std::pair<Dataset, SignMask> apply_sign_mask(const RawDataset& raw,
                                             const std::vector<int>& pos,
                                             const std::vector<int>& neg);

// Sign-mask file: one "<index> <+|->" per line, 0-based; '#' comments.
std::pair<std::vector<int>, std::vector<int>> load_sign_mask_file(
    const std::string& path);
void write_sign_mask_file(const std::string& path, const std::vector<int>& pos,
                          const std::vector<int>& neg);

struct SimilarityMatrix {
  dmat S;                      // n x n, S(i,j) = similarity(seq_i, seq_j)
  std::vector<double> labels;  // per sequence, {-1,+1}
};

// header-less CSV of n rows by n floats; labels one per line in a second file
SimilarityMatrix load_similarity_csv(const std::string& matrix_path,
                                     const std::string& labels_path);

std::vector<double> load_labels(const std::string& path, bool labels01 = false);

// FNV-1a over dims, labels, and feature bit patterns; stable id for a dataset.
std::uint64_t fingerprint(const RawDataset& raw);

}  // namespace scsvm
