#include "scsvm/pg.hpp"

#include "scsvm/objectives.hpp"
#include "scsvm/projection.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

namespace scsvm {

double pg_bound(double lambda, double R, double T) {
  if (!(lambda > 0.0) || T < 2.0)
    throw std::invalid_argument("pg_bound: need lambda > 0 and T >= 2");
  double c = std::sqrt(2.0 * lambda) + R;
  return c * c * std::log(T) / (lambda * T);
}

PgResult pg_train(const Dataset& data, const SignMask& mask, const PgConfig& cfg) {
  if (!(cfg.lambda > 0.0)) throw std::invalid_argument("pg_train: lambda must be positive");
  if (cfg.max_iter < 1) throw std::invalid_argument("pg_train: max_iter must be >= 1");
  if (mask.d() != data.d()) throw std::invalid_argument("pg_train: mask dimension mismatch");

  const double lambda = cfg.lambda;
  const double n = static_cast<double>(data.n());

  std::vector<std::int64_t> schedule = cfg.schedule;
  if (schedule.empty()) schedule = {cfg.max_iter};
  if (!std::is_sorted(schedule.begin(), schedule.end()) ||
      schedule.front() < 1 || schedule.back() > cfg.max_iter)
    throw std::invalid_argument("pg_train: schedule must be sorted within [1, max_iter]");

  PgResult res;
  res.best_primal = std::numeric_limits<double>::infinity();
  auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration_cast<std::chrono::nanoseconds>(
               std::chrono::steady_clock::now() - t0)
        .count();
  };

  dvec w = dvec::Zero(data.d());
  dvec z = dvec::Zero(data.n());  // margins of the current w
  bool z_valid = true;            // X^T * 0 = 0
  size_t next_rec = 0;

  for (std::int64_t t = 1; t <= cfg.max_iter; ++t) {
    if (!z_valid) z = data.X.transpose() * w;
    dvec viol = (z.array() < 1.0).cast<double>();
    dvec g = lambda * w - (data.X * viol) / n;
    w -= g / (lambda * static_cast<double>(t));
    w = project_sign_cone(w, mask);
    w = project_ball(w, lambda);
    z_valid = false;

    if (next_rec < schedule.size() && schedule[next_rec] == t) {
      ++next_rec;
      z = data.X.transpose() * w;  // margins of the post-update iterate
      z_valid = true;
      double P = 0.5 * lambda * w.squaredNorm() +
                 (1.0 - z.array()).max(0.0).sum() / n;
      if (!std::isfinite(P))
        throw std::runtime_error("pg_train: non-finite objective at iteration " +
                                 std::to_string(t));
      res.trace.push_back(TraceRecord{t, P, std::nullopt, std::nullopt, elapsed()});
      if (P < res.best_primal) {
        res.best_primal = P;
        res.best_iter = t;
        res.model.w = w;
      }
    }
  }

  res.model.lambda = lambda;
  res.model.mask = mask;
  res.model.solver = "pg";
  res.model.iterations = cfg.max_iter;
  res.model.certified = false;
  return res;
}

}  // namespace scsvm
