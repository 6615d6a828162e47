#include <CLI11.hpp>
#include <json.hpp>

#include "scsvm/data_io.hpp"
#include "scsvm/eval.hpp"
#include "scsvm/fw.hpp"
#include "scsvm/line_search.hpp"
#include "scsvm/model_io.hpp"
#include "scsvm/objectives.hpp"
#include "scsvm/oracles.hpp"
#include "scsvm/pairwise.hpp"
#include "scsvm/pg.hpp"
#include "scsvm/schedule.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

namespace {

using namespace scsvm;

constexpr int kExitError = 1;
constexpr int kExitNotCertified = 2;

DataFormat format_from(const std::string& fmt, const std::string& path) {
  if (fmt == "sparse") return DataFormat::SparseIndexValue;
  if (fmt == "csv") return DataFormat::DenseCsv;
  // auto: by extension
  if (path.size() > 4 && path.substr(path.size() - 4) == ".csv")
    return DataFormat::DenseCsv;
  return DataFormat::SparseIndexValue;
}

std::vector<std::int64_t> parse_schedule(const std::string& spec, std::int64_t T) {
  if (spec == "log") return log_schedule(T);
  if (spec == "all") return {};  // empty means every iteration for fw
  std::vector<std::int64_t> out;
  std::istringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    out.push_back(std::stoll(tok));
  }
  if (out.empty()) throw std::runtime_error("empty --eval-schedule");
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<double> parse_grid(const std::string& csv) {
  std::vector<double> out;
  std::istringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    out.push_back(std::stod(tok));
  }
  return out;
}

struct DataArgs {
  std::string path;
  std::string format = "auto";
  std::string signs;
  bool normalize = false;
  bool labels01 = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--data", path, "training data file")->required();
    cmd->add_option("--format", format, "sparse|csv (default: by extension)")
        ->check(CLI::IsMember({"auto", "sparse", "csv"}));
    cmd->add_option("--signs", signs, "sign-mask file: '<index> <+|->' per line");
    cmd->add_flag("--normalize", normalize, "scale every example to unit norm");
    cmd->add_flag("--labels01", labels01, "accept {0,1} labels, mapping 0 to -1");
  }

  RawDataset load_raw() const {
    RawDataset raw = load_dataset(path, format_from(format, path), labels01);
    if (normalize) raw = normalize_unit(raw);
    return raw;
  }
  std::pair<std::vector<int>, std::vector<int>> load_signs(Eigen::Index) const {
    if (signs.empty()) return {{}, {}};
    return load_sign_mask_file(signs);
  }
};

struct LambdaArgs {
  double lambda = 0.0;
  double lambda_over_n = 0.0;

  void attach(CLI::App* cmd) {
    auto* a = cmd->add_option("--lambda", lambda, "regularization weight");
    auto* b = cmd->add_option("--lambda-over-n", lambda_over_n,
                              "regularization as a multiple of 1/n");
    a->excludes(b);
  }
  double resolve(Eigen::Index n) const {
    if (lambda > 0.0) return lambda;
    if (lambda_over_n > 0.0) return lambda_over_n / static_cast<double>(n);
    throw std::runtime_error("one of --lambda or --lambda-over-n is required and must be positive");
  }
};

int cmd_train(const DataArgs& da, const LambdaArgs& la, const std::string& solver,
              double epsilon, std::int64_t max_iter, const std::string& schedule_spec,
              const std::string& trace_path, const std::string& model_path,
              std::uint64_t seed) {
  RawDataset raw = da.load_raw();
  auto [pos, neg] = da.load_signs(raw.d());
  auto [data, mask] = apply_sign_mask(raw, pos, neg);
  double lam = la.resolve(data.n());
  std::uint64_t fp = fingerprint(raw);

  PrimalModel model;
  std::vector<TraceRecord> trace;
  bool certified_exit = true;

  if (solver == "fw") {
    FwConfig cfg;
    cfg.lambda = lam;
    cfg.epsilon = epsilon;
    cfg.max_iter = max_iter;
    std::string spec = schedule_spec.empty() ? "all" : schedule_spec;
    cfg.schedule = parse_schedule(spec, max_iter);
    FwResult res = fw_train(data, mask, cfg);
    model = res.model;
    trace = std::move(res.trace);
    certified_exit = res.certified;
    std::cerr << "fw: " << res.iterations << " iterations, gap " << res.final_gap
              << (res.certified ? " (certified)" : " (NOT certified)") << "\n";
  } else {
    PgConfig cfg;
    cfg.lambda = lam;
    cfg.max_iter = max_iter;
    cfg.seed = seed;
    std::string spec = schedule_spec.empty() ? "log" : schedule_spec;
    auto sched = parse_schedule(spec, max_iter);
    if (sched.empty()) sched = full_schedule(max_iter);
    cfg.schedule = std::move(sched);
    PgResult res = pg_train(data, mask, cfg);
    model = res.model;
    trace = std::move(res.trace);
    std::cerr << "pg: best P " << res.best_primal << " at iteration " << res.best_iter
              << " of " << max_iter << "\n";
  }

  if (!model_path.empty()) save_model(model_path, to_model_file(model, fp));
  if (!trace_path.empty()) write_trace_csv(trace_path, trace);
  return certified_exit ? 0 : kExitNotCertified;
}

int cmd_predict(const std::string& model_path, const DataArgs& da,
                const std::string& out_path, bool with_auc) {
  ModelFile mf = load_model(model_path);
  RawDataset raw = da.load_raw();
  if (raw.d() != mf.w_user.size())
    throw std::runtime_error("model dimension " + std::to_string(mf.w_user.size()) +
                             " does not match data dimension " + std::to_string(raw.d()));
  if (fingerprint(raw) != mf.dataset_fingerprint)
    std::cerr << "warning: dataset fingerprint differs from the training set\n";

  dvec scores = raw.features * mf.w_user;
  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) throw std::runtime_error("cannot open " + out_path + " for writing");
    out = &file;
  }
  char buf[32];
  for (Eigen::Index i = 0; i < scores.size(); ++i) {
    snprintf(buf, sizeof buf, "%.17g", scores[i]);
    *out << buf << '\n';
  }
  if (with_auc) *out << "auc," << auc(scores, raw.labels) << '\n';
  return 0;
}

int cmd_pairwise(const std::string& sim_path, const std::string& labels_path,
                 const std::string& out_data, const std::string& out_signs,
                 const std::string& out_idmap) {
  SimilarityMatrix sim = load_similarity_csv(sim_path, labels_path);
  PairwiseData pw = build_pairwise(sim);
  write_dataset(out_data, pw.raw, DataFormat::DenseCsv);
  write_sign_mask_file(out_signs, std::vector<int>(pw.mask.pos_idx.begin(),
                                                   pw.mask.pos_idx.begin() + pw.n_pos),
                       pw.mask.neg_idx);
  std::ofstream f(out_idmap);
  if (!f) throw std::runtime_error("cannot open " + out_idmap + " for writing");
  for (size_t i = 0; i < pw.order.size(); ++i) f << i << ' ' << pw.order[i] << '\n';
  return 0;
}

int cmd_eval(const DataArgs& da, const std::string& lambdas_csv,
             const std::string& lambdas_over_n_csv, int folds, std::uint64_t seed,
             const std::string& solver, double epsilon, std::int64_t max_iter,
             const std::string& out_path) {
  RawDataset raw = da.load_raw();
  auto [pos, neg] = da.load_signs(raw.d());

  std::vector<double> lambdas;
  if (!lambdas_csv.empty()) lambdas = parse_grid(lambdas_csv);
  if (!lambdas_over_n_csv.empty()) {
    for (double c : parse_grid(lambdas_over_n_csv))
      lambdas.push_back(c / static_cast<double>(raw.n()));
  }
  if (lambdas.empty())
    throw std::runtime_error("provide --lambdas or --lambdas-over-n");

  CvConfig cfg;
  cfg.folds = folds;
  cfg.seed = seed;
  cfg.solver = solver == "pg" ? CvSolver::Pg : CvSolver::Fw;
  cfg.epsilon = epsilon;
  cfg.max_iter = max_iter;
  CvResult res = cross_validate(raw, pos, neg, lambdas, cfg);

  nlohmann::json j;
  j["best_lambda"] = res.best_lambda;
  j["folds"] = folds;
  j["seed"] = seed;
  j["grid"] = nlohmann::json::array();
  for (size_t i = 0; i < res.lambdas.size(); ++i)
    j["grid"].push_back({{"lambda", res.lambdas[i]},
                         {"mean_auc", res.mean_auc[i]},
                         {"std_auc", res.std_auc[i]}});
  if (out_path.empty()) {
    std::cout << j.dump(2) << '\n';
  } else {
    std::ofstream f(out_path);
    if (!f) throw std::runtime_error("cannot open " + out_path + " for writing");
    f << j.dump(2) << '\n';
  }
  return 0;
}

int cmd_verify(std::uint64_t seed, const std::string& check, double lambda,
               double epsilon, std::int64_t grid_points, int instances) {
  bool all_ok = true;
  auto report = [&](const std::string& name, bool ok, const std::string& detail) {
    std::cout << (ok ? "ok " : "FAIL ") << name << ": " << detail << "\n";
    if (!ok) all_ok = false;
  };

  if (check == "all" || check == "line-search") {
    double worst = 0.0;
    for (int k = 0; k < instances; ++k) {
      RandomInstance inst = random_instance(seed + static_cast<std::uint64_t>(k));
      std::mt19937_64 rng(seed * 7919 + static_cast<std::uint64_t>(k));
      std::uniform_real_distribution<double> unif(0.0, 1.0);
      dvec alpha(inst.data.n()), u(inst.data.n());
      for (Eigen::Index i = 0; i < alpha.size(); ++i) {
        alpha[i] = unif(rng);
        u[i] = unif(rng) < 0.5 ? 0.0 : 1.0;
      }
      dvec q = u - alpha;
      auto in = make_line_search_input(alpha, q, inst.data, inst.mask, inst.lambda);
      auto pq = build_quadratic(in);
      double eta = maximize(pq);
      auto grid = grid_line_search(alpha, q, inst.data, inst.mask, inst.lambda, grid_points);
      worst = std::max(worst, std::abs(pq.value(eta) - grid.value));
      if (pq.value(eta) < grid.value - 1e-8) {
        report("line-search", false,
               "closed form below grid optimum by " + std::to_string(grid.value - pq.value(eta)));
        break;
      }
    }
    if (all_ok)
      report("line-search", true,
             std::to_string(instances) + " instances, worst |closed-form - grid| = " +
                 std::to_string(worst));
  }

  if (check == "all" || check == "lmo") {
    bool ok = true;
    for (int k = 0; k < instances && ok; ++k) {
      RandomInstance big = random_instance(seed + 1000 + static_cast<std::uint64_t>(k));
      // shrink to n <= 12 for enumeration
      Eigen::Index n = std::min<Eigen::Index>(big.data.n(), 12);
      Dataset data;
      data.X = big.data.X.leftCols(n);
      data.labels.assign(big.data.labels.begin(), big.data.labels.begin() + n);
      data.R = data.recompute_R();
      std::mt19937_64 rng(seed * 104729 + static_cast<std::uint64_t>(k));
      std::uniform_real_distribution<double> unif(0.0, 1.0);
      DualState st;
      st.alpha = dvec(n);
      for (Eigen::Index i = 0; i < n; ++i) st.alpha[i] = unif(rng);
      st.refresh(data, big.mask, big.lambda);
      dvec u_fast = lmo(st, data);
      dvec u_slow = exhaustive_lmo(st.alpha, data, big.mask, big.lambda);
      dvec g = dual_gradient(st, data);
      double vf = 0.0, vs = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (u_fast[i] == 1.0) vf += g[i];
        if (u_slow[i] == 1.0) vs += g[i];
      }
      if (vf != vs) {
        report("lmo", false, "objective mismatch at instance " + std::to_string(k));
        ok = false;
      }
    }
    if (ok) report("lmo", true, std::to_string(instances) + " instances match enumeration exactly");
  }

  if (check == "all" || check == "rate") {
    RandomInstance inst = random_instance(seed + 2000);
    double lam = lambda > 0.0 ? lambda : inst.lambda;
    double eps = epsilon > 0.0 ? epsilon : 1e-3;
    std::int64_t bound = fw_iteration_bound(lam, inst.data.R, eps);
    FwConfig cfg;
    cfg.lambda = lam;
    cfg.epsilon = eps;
    cfg.max_iter = std::max<std::int64_t>(bound + 16, 1000);
    cfg.schedule = {cfg.max_iter};
    FwResult res = fw_train(inst.data, inst.mask, cfg);
    bool ok = res.certified && res.iterations <= cfg.max_iter;
    report("rate", ok,
           "bound " + std::to_string(bound) + " iterations, observed " +
               std::to_string(res.iterations) + " to gap <= " + std::to_string(eps));
  }

  std::cout << (all_ok ? "PASS" : "FAIL") << "\n";
  return all_ok ? 0 : kExitError;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* threads = std::getenv("SCSVM_THREADS")) {
    int t = std::atoi(threads);
    if (t > 0) Eigen::setNbThreads(t);
  }

  CLI::App app{"sign-constrained linear SVM trainer"};
  app.require_subcommand(1);

  // train
  auto* train = app.add_subcommand("train", "train a model, emit model JSON and trace CSV");
  DataArgs tr_data;
  LambdaArgs tr_lambda;
  tr_data.attach(train);
  tr_lambda.attach(train);
  std::string tr_solver = "fw", tr_schedule, tr_trace, tr_model;
  double tr_eps = 1e-3;
  std::int64_t tr_iters = 1000;
  std::uint64_t tr_seed = 0;
  train->add_option("--solver", tr_solver)->check(CLI::IsMember({"fw", "pg"}));
  train->add_option("--epsilon", tr_eps, "target duality gap (fw)");
  train->add_option("--max-iter", tr_iters);
  train->add_option("--eval-schedule", tr_schedule, "log|all|comma-separated iterations");
  train->add_option("--trace", tr_trace, "trace CSV output path");
  train->add_option("--model", tr_model, "model JSON output path");
  train->add_option("--seed", tr_seed);

  // predict
  auto* predict = app.add_subcommand("predict", "score examples with a trained model");
  DataArgs pr_data;
  pr_data.attach(predict);
  std::string pr_model, pr_out;
  bool pr_auc = false;
  predict->add_option("--model", pr_model)->required();
  predict->add_option("--out", pr_out, "scores output path (default stdout)");
  predict->add_flag("--auc", pr_auc, "append an AUC line using the data labels");

  // pairwise
  auto* pairwise = app.add_subcommand("pairwise",
                                      "build similarity-as-features training data");
  std::string pw_sim, pw_labels, pw_out_data, pw_out_signs, pw_out_idmap;
  pairwise->add_option("--sim", pw_sim, "square similarity CSV (no header)")->required();
  pairwise->add_option("--labels", pw_labels, "per-sequence labels file")->required();
  pairwise->add_option("--out-data", pw_out_data)->required();
  pairwise->add_option("--out-signs", pw_out_signs)->required();
  pairwise->add_option("--out-idmap", pw_out_idmap)->required();

  // eval
  auto* eval = app.add_subcommand("eval", "cross-validate over a lambda grid");
  DataArgs ev_data;
  ev_data.attach(eval);
  std::string ev_lambdas, ev_lambdas_over_n, ev_solver = "fw", ev_out;
  int ev_folds = 5;
  std::uint64_t ev_seed = 0;
  double ev_eps = 1e-3;
  std::int64_t ev_iters = 2000;
  eval->add_option("--lambdas", ev_lambdas, "comma-separated absolute values");
  eval->add_option("--lambdas-over-n", ev_lambdas_over_n, "comma-separated multiples of 1/n");
  eval->add_option("--folds", ev_folds);
  eval->add_option("--seed", ev_seed);
  eval->add_option("--solver", ev_solver)->check(CLI::IsMember({"fw", "pg"}));
  eval->add_option("--epsilon", ev_eps);
  eval->add_option("--max-iter", ev_iters);
  eval->add_option("--out", ev_out, "report JSON path (default stdout)");

  // verify
  auto* verify = app.add_subcommand("verify", "run the oracle checks");
  std::uint64_t vf_seed = 0;
  std::string vf_check = "all";
  double vf_lambda = 0.0, vf_eps = 0.0;
  std::int64_t vf_grid = 100000;
  int vf_instances = 100;
  verify->add_option("--seed", vf_seed);
  verify->add_option("--check", vf_check)
      ->check(CLI::IsMember({"all", "line-search", "lmo", "rate"}));
  verify->add_option("--lambda", vf_lambda);
  verify->add_option("--epsilon", vf_eps);
  verify->add_option("--grid-points", vf_grid);
  verify->add_option("--instances", vf_instances);

  CLI11_PARSE(app, argc, argv);

  try {
    if (train->parsed())
      return cmd_train(tr_data, tr_lambda, tr_solver, tr_eps, tr_iters, tr_schedule,
                       tr_trace, tr_model, tr_seed);
    if (predict->parsed()) return cmd_predict(pr_model, pr_data, pr_out, pr_auc);
    if (pairwise->parsed())
      return cmd_pairwise(pw_sim, pw_labels, pw_out_data, pw_out_signs, pw_out_idmap);
    if (eval->parsed())
      return cmd_eval(ev_data, ev_lambdas, ev_lambdas_over_n, ev_folds, ev_seed,
                      ev_solver, ev_eps, ev_iters, ev_out);
    if (verify->parsed())
      return cmd_verify(vf_seed, vf_check, vf_lambda, vf_eps, vf_grid, vf_instances);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
