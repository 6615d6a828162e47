#include "scsvm/eval.hpp"

#include "scsvm/data_io.hpp"
#include "scsvm/fw.hpp"
#include "scsvm/pg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace scsvm {

double auc(const dvec& scores, const std::vector<double>& labels) {
  if (scores.size() != static_cast<Eigen::Index>(labels.size()))
    throw std::invalid_argument("auc: score/label size mismatch");
  std::uint64_t n_pos = 0, n_neg = 0;
  for (double y : labels) (y > 0 ? n_pos : n_neg)++;
  if (n_pos == 0 || n_neg == 0)
    throw std::invalid_argument("auc: both classes must be present");

  std::vector<Eigen::Index> idx(static_cast<size_t>(scores.size()));
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&](Eigen::Index a, Eigen::Index b) { return scores[a] < scores[b]; });

  // integer pair counts: wins = (pos, neg) pairs with pos strictly above,
  // ties = pairs sharing a score
  std::uint64_t wins = 0, ties = 0, neg_below = 0;
  size_t i = 0;
  const size_t N = idx.size();
  while (i < N) {
    size_t j = i;
    std::uint64_t g_pos = 0, g_neg = 0;
    while (j < N && scores[idx[j]] == scores[idx[i]]) {
      (labels[static_cast<size_t>(idx[j])] > 0 ? g_pos : g_neg)++;
      ++j;
    }
    wins += neg_below * g_pos;
    ties += g_pos * g_neg;
    neg_below += g_neg;
    i = j;
  }
  return (static_cast<double>(wins) + 0.5 * static_cast<double>(ties)) /
         (static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

std::vector<int> stratified_folds(const std::vector<double>& labels, int k,
                                  std::uint64_t seed) {
  if (k < 2) throw std::invalid_argument("stratified_folds: need k >= 2");
  std::vector<size_t> pos, neg;
  for (size_t i = 0; i < labels.size(); ++i) (labels[i] > 0 ? pos : neg).push_back(i);
  std::mt19937_64 rng(seed);
  std::shuffle(pos.begin(), pos.end(), rng);
  std::shuffle(neg.begin(), neg.end(), rng);
  std::vector<int> fold(labels.size(), -1);
  for (size_t i = 0; i < pos.size(); ++i) fold[pos[i]] = static_cast<int>(i % static_cast<size_t>(k));
  for (size_t i = 0; i < neg.size(); ++i) fold[neg[i]] = static_cast<int>(i % static_cast<size_t>(k));
  return fold;
}

namespace {

RawDataset take_rows(const RawDataset& raw, const std::vector<Eigen::Index>& rows) {
  RawDataset out;
  out.features = dmat(static_cast<Eigen::Index>(rows.size()), raw.d());
  out.labels.resize(rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    out.features.row(static_cast<Eigen::Index>(i)) = raw.features.row(rows[i]);
    out.labels[i] = raw.labels[static_cast<size_t>(rows[i])];
  }
  return out;
}

}  // namespace

CvResult cross_validate(const RawDataset& raw, const std::vector<int>& pos,
                        const std::vector<int>& neg,
                        const std::vector<double>& lambdas, const CvConfig& cfg) {
  if (lambdas.empty()) throw std::invalid_argument("cross_validate: empty lambda grid");
  auto fold = stratified_folds(raw.labels, cfg.folds, cfg.seed);

  CvResult res;
  res.lambdas = lambdas;
  res.mean_auc.assign(lambdas.size(), 0.0);
  res.std_auc.assign(lambdas.size(), 0.0);
  std::vector<std::vector<double>> per_fold(lambdas.size());

  for (int f = 0; f < cfg.folds; ++f) {
    std::vector<Eigen::Index> train_rows, val_rows;
    for (Eigen::Index i = 0; i < raw.n(); ++i)
      (fold[static_cast<size_t>(i)] == f ? val_rows : train_rows).push_back(i);
    auto has_both = [&](const std::vector<Eigen::Index>& rows) {
      bool p = false, m = false;
      for (auto i : rows) (raw.labels[static_cast<size_t>(i)] > 0 ? p : m) = true;
      return p && m;
    };
    if (!has_both(val_rows) || !has_both(train_rows))
      throw std::runtime_error("cross_validate: fold " + std::to_string(f) +
                               " lacks a class; use fewer folds");
    RawDataset train = take_rows(raw, train_rows);
    RawDataset val = take_rows(raw, val_rows);
    auto [data, mask] = apply_sign_mask(train, pos, neg);

    for (size_t li = 0; li < lambdas.size(); ++li) {
      dvec w_user;
      if (cfg.solver == CvSolver::Fw) {
        FwConfig fc;
        fc.lambda = lambdas[li];
        fc.epsilon = cfg.epsilon;
        fc.max_iter = cfg.max_iter;
        fc.schedule = {cfg.max_iter};  // trace not needed here
        w_user = user_weights(fw_train(data, mask, fc).model);
      } else {
        PgConfig pc;
        pc.lambda = lambdas[li];
        pc.max_iter = cfg.max_iter;
        w_user = user_weights(pg_train(data, mask, pc).model);
      }
      dvec scores = val.features * w_user;
      per_fold[li].push_back(auc(scores, val.labels));
    }
  }

  double best = -1.0;
  size_t best_i = 0;
  for (size_t li = 0; li < lambdas.size(); ++li) {
    const auto& xs = per_fold[li];
    double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    var = xs.size() > 1 ? var / static_cast<double>(xs.size() - 1) : 0.0;
    res.mean_auc[li] = mean;
    res.std_auc[li] = std::sqrt(var);
    if (mean > best) {
      best = mean;
      best_i = li;
    }
  }
  res.best_lambda = lambdas[best_i];
  res.fold_auc = std::move(per_fold);
  return res;
}

}  // namespace scsvm
