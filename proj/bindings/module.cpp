#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "scsvm/data_io.hpp"
#include "scsvm/eval.hpp"
#include "scsvm/fw.hpp"
#include "scsvm/objectives.hpp"
#include "scsvm/pairwise.hpp"
#include "scsvm/pg.hpp"
#include "scsvm/projection.hpp"
#include "scsvm/schedule.hpp"

#include <cmath>
#include <limits>

namespace py = pybind11;
using namespace scsvm;

namespace {

std::pair<Dataset, SignMask> make_problem(const dmat& features,
                                          const std::vector<double>& labels,
                                          const std::vector<int>& pos,
                                          const std::vector<int>& neg) {
  RawDataset raw{features, labels};
  return apply_sign_mask(raw, pos, neg);
}

py::dict trace_dict(const std::vector<TraceRecord>& trace) {
  const auto n = static_cast<py::ssize_t>(trace.size());
  py::array_t<std::int64_t> iter(n);
  py::array_t<double> primal(n), dual(n), gap(n);
  auto it = iter.mutable_unchecked<1>();
  auto pr = primal.mutable_unchecked<1>();
  auto du = dual.mutable_unchecked<1>();
  auto gp = gap.mutable_unchecked<1>();
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  for (py::ssize_t i = 0; i < n; ++i) {
    const auto& r = trace[static_cast<size_t>(i)];
    it(i) = r.iter;
    pr(i) = r.primal;
    du(i) = r.dual ? *r.dual : nan;
    gp(i) = r.gap ? *r.gap : nan;
  }
  py::dict d;
  d["iter"] = iter;
  d["primal"] = primal;
  d["dual"] = dual;
  d["gap"] = gap;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "sign-constrained linear SVM solvers";

  m.def(
      "train_fw",
      [](const dmat& features, const std::vector<double>& labels,
         const std::vector<int>& pos, const std::vector<int>& neg, double lam,
         double epsilon, std::int64_t max_iter,
         const std::vector<std::int64_t>& schedule) {
        auto [data, mask] = make_problem(features, labels, pos, neg);
        FwConfig cfg;
        cfg.lambda = lam;
        cfg.epsilon = epsilon;
        cfg.max_iter = max_iter;
        cfg.schedule = schedule;
        FwResult res;
        {
          py::gil_scoped_release release;
          res = fw_train(data, mask, cfg);
        }
        py::dict out;
        out["w"] = user_weights(res.model);
        out["w_internal"] = res.model.w;
        out["lambda"] = lam;
        out["iterations"] = res.iterations;
        out["certified"] = res.certified;
        out["gap"] = res.final_gap;
        out["trace"] = trace_dict(res.trace);
        return out;
      },
      py::arg("features"), py::arg("labels"), py::arg("pos") = std::vector<int>{},
      py::arg("neg") = std::vector<int>{}, py::arg("lam") = 1.0,
      py::arg("epsilon") = 1e-3, py::arg("max_iter") = 1000,
      py::arg("schedule") = std::vector<std::int64_t>{},
      "Pairwise-step conditional-gradient solver with a duality-gap certificate");

  m.def(
      "train_pg",
      [](const dmat& features, const std::vector<double>& labels,
         const std::vector<int>& pos, const std::vector<int>& neg, double lam,
         std::int64_t max_iter, const std::vector<std::int64_t>& schedule) {
        auto [data, mask] = make_problem(features, labels, pos, neg);
        PgConfig cfg;
        cfg.lambda = lam;
        cfg.max_iter = max_iter;
        cfg.schedule = schedule.empty() ? log_schedule(max_iter) : schedule;
        PgResult res;
        {
          py::gil_scoped_release release;
          res = pg_train(data, mask, cfg);
        }
        py::dict out;
        out["w"] = user_weights(res.model);
        out["w_internal"] = res.model.w;
        out["lambda"] = lam;
        out["best_iter"] = res.best_iter;
        out["best_primal"] = res.best_primal;
        out["trace"] = trace_dict(res.trace);
        return out;
      },
      py::arg("features"), py::arg("labels"), py::arg("pos") = std::vector<int>{},
      py::arg("neg") = std::vector<int>{}, py::arg("lam") = 1.0,
      py::arg("max_iter") = 1000,
      py::arg("schedule") = std::vector<std::int64_t>{},
      "Projected subgradient solver; returns the best recorded iterate");

  m.def(
      "primal_objective",
      [](const dvec& w_user, const dmat& features, const std::vector<double>& labels,
         const std::vector<int>& pos, const std::vector<int>& neg, double lam) {
        auto [data, mask] = make_problem(features, labels, pos, neg);
        dvec w = w_user;
        for (Eigen::Index h = 0; h < w.size(); ++h)
          if (mask.negated[static_cast<size_t>(h)]) w[h] = -w[h];  // into solver space
        return primal_objective(w, lam, data);
      },
      py::arg("w"), py::arg("features"), py::arg("labels"),
      py::arg("pos") = std::vector<int>{}, py::arg("neg") = std::vector<int>{},
      py::arg("lam") = 1.0,
      "Regularized hinge objective of user-space weights");

  m.def(
      "build_pairwise",
      [](const dmat& S, const std::vector<double>& labels) {
        SimilarityMatrix sim{S, labels};
        PairwiseData pw = build_pairwise(sim);
        py::dict out;
        out["features"] = pw.raw.features;
        out["labels"] = pw.raw.labels;
        std::vector<int> pos(pw.mask.pos_idx.begin(),
                             pw.mask.pos_idx.begin() + pw.n_pos);
        out["pos"] = pos;
        out["neg"] = pw.mask.neg_idx;
        out["order"] = pw.order;
        out["n_pos"] = static_cast<std::int64_t>(pw.n_pos);
        return out;
      },
      py::arg("S"), py::arg("labels"),
      "Similarity-as-features construction: positives-first reorder plus sign "
      "constraints");

  m.def(
      "project_sign_cone",
      [](const dvec& w, const std::vector<std::uint8_t>& sigma) {
        std::vector<int> pos;
        for (int h = 0; h < static_cast<int>(sigma.size()); ++h)
          if (sigma[static_cast<size_t>(h)]) pos.push_back(h);
        return project_sign_cone(
            w, SignMask::make(static_cast<Eigen::Index>(sigma.size()), pos, {}));
      },
      py::arg("w"), py::arg("sigma"),
      "Clip coordinates with sigma_h = 1 at zero");

  m.def("project_ball", &project_ball, py::arg("w"), py::arg("lam"),
        "Scale into the ball of radius sqrt(2/lam)");

  m.def(
      "auc", [](const dvec& scores, const std::vector<double>& labels) {
        return auc(scores, labels);
      },
      py::arg("scores"), py::arg("labels"));

  m.def("log_schedule", &log_schedule, py::arg("T"),
        "About ten log-spaced checkpoints per decade, always ending at T");
  m.def("full_schedule", &full_schedule, py::arg("T"));
}
