#include <doctest.h>

#include "helpers.hpp"
#include "scsvm/fw.hpp"
#include "scsvm/objectives.hpp"
#include "scsvm/oracles.hpp"
#include "scsvm/projection.hpp"

#include <cmath>
#include <random>

using namespace scsvm;
using testutil::make_dataset;
using testutil::small_instance;

TEST_CASE("gradient and direction oracle on hand cases") {
  dmat rows(2, 2);
  rows << 1.0, 0.0, 0.0, 1.0;
  auto data = make_dataset(rows, {1.0, 1.0});
  SignMask mask = SignMask::none(2);

  DualState st;
  st.alpha = dvec::Zero(2);
  st.refresh(data, mask, 1.0);
  // w = 0: every margin is 0 < 1, gradient is (1/n) 1, corner is all ones
  dvec g = dual_gradient(st, data);
  CHECK(g[0] == doctest::Approx(0.5));
  CHECK(g[1] == doctest::Approx(0.5));
  CHECK(lmo(st, data) == dvec::Ones(2));

  st.alpha = dvec::Ones(2);
  st.refresh(data, mask, 0.25);  // w = [2,2], margins 2 >= 1
  CHECK(lmo(st, data) == dvec::Zero(2));

  // margin exactly 1 contributes 0 (tie rule)
  st.alpha = dvec::Ones(2);
  st.refresh(data, mask, 0.5);  // w = [1,1], margins exactly 1
  CHECK(lmo(st, data) == dvec::Zero(2));
}

TEST_CASE("direction oracle maximizes the linear form over sampled corners") {
  std::mt19937_64 rng(41);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto inst = small_instance(1200 + seed, 12, 8);
    DualState st;
    st.alpha = testutil::random_box(rng, inst.data.n());
    st.refresh(inst.data, inst.mask, inst.lambda);
    dvec g = dual_gradient(st, inst.data);
    dvec u = lmo(st, inst.data);
    for (int t = 0; t < 200; ++t) {
      dvec cand = testutil::random_corner(rng, inst.data.n());
      CHECK(g.dot(u) >= g.dot(cand) - 1e-12);
    }
  }
}

TEST_CASE("direction oracle agrees with exhaustive enumeration") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto inst = small_instance(1400 + seed, 10, 6);
    std::mt19937_64 rng(seed);
    DualState st;
    st.alpha = testutil::random_box(rng, inst.data.n());
    st.refresh(inst.data, inst.mask, inst.lambda);
    dvec g = dual_gradient(st, inst.data);
    dvec fast = lmo(st, inst.data);
    dvec slow = exhaustive_lmo(st.alpha, inst.data, inst.mask, inst.lambda);
    // objectives must agree exactly; the corners themselves may differ
    // only on tied coordinates, which both sides send to 0
    CHECK(g.dot(fast) == g.dot(slow));
    CHECK(fast == slow);
  }
}

TEST_CASE("one-example problem is solved to a certificate") {
  // x=[1], y=+1, lambda=1: optimum alpha=1, w=1, P=D=1/2
  dmat rows(1, 1);
  rows << 1.0;
  auto data = make_dataset(rows, {1.0});
  SignMask mask = SignMask::none(1);
  FwConfig cfg;
  cfg.lambda = 1.0;
  cfg.epsilon = 1e-8;
  cfg.max_iter = 500;
  auto res = fw_train(data, mask, cfg);
  CHECK(res.certified);
  CHECK(res.final_gap <= 1e-8);
  CHECK(res.model.w[0] == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(res.state.alpha[0] == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(res.model.certified);
  CHECK(res.model.final_gap.has_value());
  CHECK(res.model.solver == "fw");
}

TEST_CASE("dual value never decreases along the trace") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    auto inst = small_instance(1600 + seed);
    FwConfig cfg;
    cfg.lambda = inst.lambda;
    cfg.epsilon = 1e-7;
    cfg.max_iter = 300;
    auto res = fw_train(inst.data, inst.mask, cfg);
    REQUIRE(!res.trace.empty());
    double prev = -std::numeric_limits<double>::infinity();
    for (auto& r : res.trace) {
      REQUIRE(r.dual.has_value());
      REQUIRE(r.gap.has_value());
      CHECK(*r.dual >= prev - 1e-12);
      CHECK(*r.gap >= 0.0);
      CHECK(r.primal - *r.dual >= -1e-10);
      prev = *r.dual;
    }
    check_alpha_box(res.state.alpha);
    // cone and ball feasibility of the returned weights
    for (Eigen::Index h = 0; h < res.model.w.size(); ++h)
      if (inst.mask.constrained(h)) CHECK(res.model.w[h] >= 0.0);
    CHECK(res.model.w.norm() <= ball_radius(inst.lambda) * (1.0 + 1e-10));
  }
}

TEST_CASE("unconstrained runs match an independent coordinate-ascent reference") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    auto inst = small_instance(1800 + seed);
    SignMask free = SignMask::none(inst.data.d());
    FwConfig cfg;
    cfg.lambda = inst.lambda;
    cfg.epsilon = 1e-6;
    cfg.max_iter = 40000;
    auto res = fw_train(inst.data, free, cfg);
    REQUIRE(res.certified);
    auto ref = dual_cd_reference(inst.data, inst.lambda, 4000, 1e-10);
    REQUIRE(ref.converged);
    // gap <= 1e-6 pins P(w) within 1e-6 of the optimum from above
    double p = primal_objective(res.model.w, inst.lambda, inst.data);
    CHECK(p >= ref.P_star - 1e-9);
    CHECK(p - ref.P_star <= 1.5e-6);
  }
}

TEST_CASE("hitting the iteration cap leaves the run uncertified") {
  auto inst = random_instance(71);  // large enough that two steps cannot finish
  FwConfig cfg;
  cfg.lambda = inst.lambda;
  cfg.epsilon = 1e-12;
  cfg.max_iter = 2;
  auto res = fw_train(inst.data, inst.mask, cfg);
  CHECK_FALSE(res.certified);
  CHECK_FALSE(res.model.certified);
  CHECK(res.iterations == 2);
  CHECK(res.final_gap > 1e-12);
  // the final state is still recorded
  CHECK(res.trace.back().iter == 2);
}

TEST_CASE("trace honors a custom schedule and always ends with the final state") {
  auto inst = random_instance(72);  // must survive the whole horizon
  FwConfig cfg;
  cfg.lambda = inst.lambda;
  cfg.epsilon = 1e-300;
  cfg.max_iter = 50;
  cfg.schedule = {0, 7, 23};
  auto res = fw_train(inst.data, inst.mask, cfg);
  REQUIRE(res.trace.size() == 4);
  CHECK(res.trace[0].iter == 0);
  CHECK(res.trace[1].iter == 7);
  CHECK(res.trace[2].iter == 23);
  CHECK(res.trace[3].iter == 50);

  // empty schedule records every state 0..T
  FwConfig all = cfg;
  all.schedule.clear();
  all.max_iter = 12;
  auto res_all = fw_train(inst.data, inst.mask, all);
  REQUIRE(res_all.trace.size() >= 2);
  for (size_t i = 0; i < res_all.trace.size(); ++i)
    CHECK(res_all.trace[i].iter == static_cast<std::int64_t>(i));
}

TEST_CASE("deterministic: two runs produce identical traces") {
  auto inst = small_instance(2300);
  FwConfig cfg;
  cfg.lambda = inst.lambda;
  cfg.epsilon = 1e-9;
  cfg.max_iter = 200;
  auto a = fw_train(inst.data, inst.mask, cfg);
  auto b = fw_train(inst.data, inst.mask, cfg);
  REQUIRE(a.trace.size() == b.trace.size());
  for (size_t i = 0; i < a.trace.size(); ++i) {
    CHECK(a.trace[i].iter == b.trace[i].iter);
    CHECK(a.trace[i].primal == b.trace[i].primal);
    CHECK(*a.trace[i].dual == *b.trace[i].dual);
    CHECK(*a.trace[i].gap == *b.trace[i].gap);
  }
  CHECK(a.model.w == b.model.w);
}

TEST_CASE("warm start from a feasible alpha") {
  auto inst = small_instance(2400);
  std::mt19937_64 rng(2400);
  FwConfig cfg;
  cfg.lambda = inst.lambda;
  cfg.epsilon = 1e-6;
  cfg.max_iter = 20000;
  cfg.alpha0 = testutil::random_box(rng, inst.data.n());
  auto res = fw_train(inst.data, inst.mask, cfg);
  CHECK(res.certified);

  FwConfig bad = cfg;
  bad.alpha0 = dvec::Constant(inst.data.n(), 1.5);
  CHECK_THROWS_AS(fw_train(inst.data, inst.mask, bad), std::invalid_argument);
}

TEST_CASE("iteration and curvature bounds") {
  // 2*R^2/(lambda*eps) - 2 = 2/(0.1*0.01) - 2 = 1998 at R=1
  CHECK(fw_iteration_bound(0.1, 1.0, 0.01) == 1998);
  CHECK(fw_iteration_bound(10.0, 1.0, 10.0) == 0);  // negative clamps to zero
  CHECK(fw_curvature_bound(0.5, 2.0) == doctest::Approx(8.0));
  CHECK_THROWS_AS(fw_iteration_bound(0.0, 1.0, 0.1), std::invalid_argument);
}

TEST_CASE("convergence rate bound holds on small instances") {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    auto inst = small_instance(2500 + seed, 15, 8);
    OracleConfig ocfg;
    ocfg.reference_gap = 1e-9;
    ocfg.reference_iters = 60000;
    auto ref = reference_optimum(inst.data, inst.mask, inst.lambda, ocfg);
    REQUIRE(ref.converged);

    FwConfig cfg;
    cfg.lambda = inst.lambda;
    cfg.epsilon = 1e-300;  // unreachable; run the full horizon
    cfg.max_iter = 200;
    auto res = fw_train(inst.data, inst.mask, cfg);
    double curv = fw_curvature_bound(inst.lambda, inst.data.R);
    for (auto& r : res.trace) {
      if (r.iter == 0) continue;
      double bound = 2.0 * curv / (static_cast<double>(r.iter) + 2.0);
      CHECK(ref.D_star - *r.dual <= bound + 2e-9);
    }
  }
}

TEST_CASE("gap certificate implies true dual suboptimality") {
  auto inst = small_instance(2600);
  FwConfig cfg;
  cfg.lambda = inst.lambda;
  cfg.epsilon = 1e-6;
  cfg.max_iter = 60000;
  auto res = fw_train(inst.data, inst.mask, cfg);
  REQUIRE(res.certified);
  OracleConfig ocfg;
  ocfg.reference_gap = 1e-10;
  ocfg.reference_iters = 60000;
  auto ref = reference_optimum(inst.data, inst.mask, inst.lambda, ocfg);
  REQUIRE(ref.converged);
  DualState st = res.state;
  st.refresh(inst.data, inst.mask, inst.lambda);
  CHECK(ref.D_star - dual_objective(st, inst.lambda) <= 1e-6 + 2e-9);
}
