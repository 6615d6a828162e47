#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace scsvm {

using dvec = Eigen::VectorXd;
using dmat = Eigen::MatrixXd;

// Signed training data. Column i of X holds y_i * x_i, so margins are
// z = X^T w and the dual map is w(alpha) = proj(X alpha / (lambda n)).
struct Dataset {
  dmat X;                    // d x n, column i = labels[i] * x_i
  std::vector<double> labels;  // entries in {-1, +1}
  double R = 0.0;            // max_i ||x_i||

  Eigen::Index n() const { return X.cols(); }
  Eigen::Index d() const { return X.rows(); }

  // column norms equal raw feature norms since |y_i| = 1
  double recompute_R() const {
    double r = 0.0;
    for (Eigen::Index i = 0; i < X.cols(); ++i) r = std::max(r, X.col(i).norm());
    return r;
  }
  void validate() const;
};

// Constraint bookkeeping. After preprocessing every constrained weight is
// non-negative: features originally constrained non-positive were negated,
// and `negated` records which ones (so reported weights can be mapped back).
struct SignMask {
  std::vector<std::uint8_t> sigma;    // 1 = constrained non-negative (internal space)
  std::vector<int> pos_idx;           // all constrained indices, post-preprocessing
  std::vector<int> neg_idx;           // original non-positive set, pre-negation
  std::vector<std::uint8_t> negated;  // 1 = feature was flipped

  Eigen::Index d() const { return static_cast<Eigen::Index>(sigma.size()); }
  bool constrained(Eigen::Index h) const { return sigma[static_cast<size_t>(h)] != 0; }
  bool any_constraint() const;

  static SignMask none(Eigen::Index d) {
    SignMask m;
    m.sigma.assign(static_cast<size_t>(d), 0);
    m.negated.assign(static_cast<size_t>(d), 0);
    return m;
  }
  static SignMask make(Eigen::Index d, const std::vector<int>& pos,
                       const std::vector<int>& neg);
  void validate() const;
};

struct PrimalModel {
  dvec w;  // internal space: sigma .* w >= 0 holds here
  double lambda = 0.0;
  SignMask mask;
  std::string solver;
  std::int64_t iterations = 0;
  std::optional<double> final_gap;
  bool certified = false;
};

// Weights in the caller's coordinate system (negation undone).
dvec user_weights(const PrimalModel& model);

struct DualState {
  dvec alpha;  // in [0,1]^n
  dvec v;      // cached X alpha / (lambda n)
  dvec w;      // cached proj_S(v)

  void refresh(const Dataset& data, const SignMask& mask, double lambda);
  // max |v - X alpha/(lambda n)| over coordinates; drift check
  double cache_error(const Dataset& data, double lambda) const;
};

struct TraceRecord {
  std::int64_t iter = 0;
  double primal = 0.0;
  std::optional<double> dual;
  std::optional<double> gap;
  std::int64_t elapsed_ns = 0;
};

}  // namespace scsvm
