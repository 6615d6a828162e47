#pragma once

#include "scsvm/data_io.hpp"
#include "scsvm/types.hpp"

namespace scsvm {

// Probability that a random positive outscores a random negative, ties
// counted one half (Mann-Whitney). Computed from integer pair counts.
double auc(const dvec& scores, const std::vector<double>& labels);

struct EvalReport {
  double auc = 0.0;
  std::int64_t n_pos = 0;
  std::int64_t n_neg = 0;
  double lambda = 0.0;
  std::uint64_t seed = 0;
};

struct CvResult {
  double best_lambda = 0.0;
  std::vector<double> lambdas;
  std::vector<double> mean_auc;
  std::vector<double> std_auc;                // unbiased (k-1 denominator)
  std::vector<std::vector<double>> fold_auc;  // [lambda][fold]
};

enum class CvSolver { Fw, Pg };

struct CvConfig {
  int folds = 5;
  std::uint64_t seed = 0;
  CvSolver solver = CvSolver::Fw;
  double epsilon = 1e-3;
  std::int64_t max_iter = 2000;
};

// Stratified k-fold CV over the lambda grid; best = highest mean validation
// AUC, ties to the earlier grid entry. Deterministic given the seed.
CvResult cross_validate(const RawDataset& raw, const std::vector<int>& pos,
                        const std::vector<int>& neg,
                        const std::vector<double>& lambdas,
                        const CvConfig& cfg);

// Stratified fold ids in [0,k), class ratio preserved within one example.
std::vector<int> stratified_folds(const std::vector<double>& labels, int k,
                                  std::uint64_t seed);

}  // namespace scsvm
