#pragma once

#include "scsvm/data_io.hpp"
#include "scsvm/types.hpp"

#include <random>
#include <vector>

namespace testutil {

using scsvm::Dataset;
using scsvm::dmat;
using scsvm::dvec;
using scsvm::RawDataset;
using scsvm::SignMask;

inline Dataset make_dataset(const dmat& rows, const std::vector<double>& labels) {
  Dataset d;
  d.X = rows.transpose();
  for (Eigen::Index i = 0; i < d.X.cols(); ++i) d.X.col(i) *= labels[static_cast<size_t>(i)];
  d.labels = labels;
  d.R = d.recompute_R();
  return d;
}

// plain-loop objective, kept free of the library's Eigen expressions
inline double naive_primal(const dvec& w, double lambda, const Dataset& data) {
  double reg = 0.0;
  for (Eigen::Index h = 0; h < w.size(); ++h) reg += w[h] * w[h];
  reg *= 0.5 * lambda;
  double hinge = 0.0;
  for (Eigen::Index i = 0; i < data.n(); ++i) {
    double z = 0.0;
    for (Eigen::Index h = 0; h < data.d(); ++h) z += data.X(h, i) * w[h];
    if (z < 1.0) hinge += 1.0 - z;
  }
  return reg + hinge / static_cast<double>(data.n());
}

inline dvec naive_w_of_alpha(const dvec& alpha, const Dataset& data,
                             const SignMask& mask, double lambda) {
  dvec v = dvec::Zero(data.d());
  for (Eigen::Index i = 0; i < data.n(); ++i)
    for (Eigen::Index h = 0; h < data.d(); ++h) v[h] += data.X(h, i) * alpha[i];
  double s = lambda * static_cast<double>(data.n());
  for (Eigen::Index h = 0; h < data.d(); ++h) {
    v[h] /= s;
    if (mask.sigma[static_cast<size_t>(h)] && v[h] < 0.0) v[h] = 0.0;
  }
  return v;
}

inline double naive_dual(const dvec& alpha, const Dataset& data,
                         const SignMask& mask, double lambda) {
  dvec w = naive_w_of_alpha(alpha, data, mask, lambda);
  double wn = 0.0;
  for (Eigen::Index h = 0; h < w.size(); ++h) wn += w[h] * w[h];
  double sa = 0.0;
  for (Eigen::Index i = 0; i < alpha.size(); ++i) sa += alpha[i];
  return -0.5 * lambda * wn + sa / static_cast<double>(data.n());
}

struct SmallInstance {
  Dataset data;
  SignMask mask;
  double lambda;
};

inline SmallInstance small_instance(std::uint64_t seed, int n_max = 20, int d_max = 10) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> nd(3, n_max), dd(2, d_max);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  int n = nd(rng), d = dd(rng);
  dmat rows(n, d);
  std::vector<double> labels(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    labels[static_cast<size_t>(i)] = unif(rng) < 0.5 ? -1.0 : 1.0;
    for (int h = 0; h < d; ++h) rows(i, h) = normal(rng);
    rows.row(i) /= rows.row(i).norm();
  }
  std::vector<int> pos;
  for (int h = 0; h < d; ++h)
    if (unif(rng) < 0.5) pos.push_back(h);
  auto [data, mask] = scsvm::apply_sign_mask(RawDataset{rows, labels}, pos, {});
  return {std::move(data), std::move(mask), std::pow(10.0, -1.0 + unif(rng))};
}

inline dvec random_box(std::mt19937_64& rng, Eigen::Index n) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  dvec a(n);
  for (Eigen::Index i = 0; i < n; ++i) a[i] = unif(rng);
  return a;
}

inline dvec random_corner(std::mt19937_64& rng, Eigen::Index n) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  dvec u(n);
  for (Eigen::Index i = 0; i < n; ++i) u[i] = unif(rng) < 0.5 ? 0.0 : 1.0;
  return u;
}

}  // namespace testutil
