#include "scsvm/model_io.hpp"

#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <sstream>

namespace scsvm {

using nlohmann::json;

ModelFile to_model_file(const PrimalModel& model, std::uint64_t fp) {
  ModelFile f;
  f.w_user = user_weights(model);
  f.sigma = model.mask.sigma;
  f.negated = model.mask.negated;
  f.lambda = model.lambda;
  f.solver = model.solver;
  f.iterations = model.iterations;
  f.final_gap = model.final_gap;
  f.certified = model.certified;
  f.dataset_fingerprint = fp;
  return f;
}

PrimalModel to_primal_model(const ModelFile& f) {
  PrimalModel m;
  m.w = f.w_user;
  for (size_t h = 0; h < f.negated.size(); ++h)
    if (f.negated[h]) m.w[static_cast<Eigen::Index>(h)] = -m.w[static_cast<Eigen::Index>(h)];
  m.lambda = f.lambda;
  m.mask.sigma = f.sigma;
  m.mask.negated = f.negated;
  for (size_t h = 0; h < f.sigma.size(); ++h) {
    if (f.sigma[h]) m.mask.pos_idx.push_back(static_cast<int>(h));
    if (f.negated[h]) m.mask.neg_idx.push_back(static_cast<int>(h));
  }
  m.solver = f.solver;
  m.iterations = f.iterations;
  m.final_gap = f.final_gap;
  m.certified = f.certified;
  return m;
}

namespace {
std::string hex64(std::uint64_t v) {
  std::ostringstream ss;
  ss << std::hex << std::setw(16) << std::setfill('0') << v;
  return ss.str();
}
std::uint64_t from_hex64(const std::string& s) {
  return std::stoull(s, nullptr, 16);
}
}  // namespace

void save_model(const std::string& path, const ModelFile& f) {
  json j;
  j["schema"] = f.schema;
  j["w"] = std::vector<double>(f.w_user.data(), f.w_user.data() + f.w_user.size());
  j["sigma"] = std::vector<int>(f.sigma.begin(), f.sigma.end());
  j["negated"] = std::vector<int>(f.negated.begin(), f.negated.end());
  j["lambda"] = f.lambda;
  j["solver"] = f.solver;
  j["iterations"] = f.iterations;
  if (f.final_gap)
    j["final_gap"] = *f.final_gap;
  else
    j["final_gap"] = nullptr;
  j["certified"] = f.certified;
  j["dataset_fingerprint"] = hex64(f.dataset_fingerprint);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << j.dump(2) << '\n';
}

ModelFile load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  ModelFile f;
  f.schema = j.at("schema").get<int>();
  if (f.schema != 1) throw std::runtime_error(path + ": unsupported schema");
  auto wv = j.at("w").get<std::vector<double>>();
  f.w_user = Eigen::Map<const dvec>(wv.data(), static_cast<Eigen::Index>(wv.size()));
  auto sv = j.at("sigma").get<std::vector<int>>();
  auto nv = j.at("negated").get<std::vector<int>>();
  f.sigma.assign(sv.begin(), sv.end());
  f.negated.assign(nv.begin(), nv.end());
  if (f.sigma.size() != wv.size() || f.negated.size() != wv.size())
    throw std::runtime_error(path + ": inconsistent vector lengths");
  f.lambda = j.at("lambda").get<double>();
  f.solver = j.at("solver").get<std::string>();
  f.iterations = j.at("iterations").get<std::int64_t>();
  if (!j.at("final_gap").is_null()) f.final_gap = j.at("final_gap").get<double>();
  f.certified = j.at("certified").get<bool>();
  f.dataset_fingerprint = from_hex64(j.at("dataset_fingerprint").get<std::string>());
  return f;
}

void write_trace_csv(const std::string& path, const std::vector<TraceRecord>& trace) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << "iter,primal,dual,gap,elapsed_ns\n";
  char buf[32];
  auto put = [&](double v) {
    snprintf(buf, sizeof buf, "%.17g", v);
    out << buf;
  };
  for (const auto& r : trace) {
    out << r.iter << ',';
    put(r.primal);
    out << ',';
    if (r.dual) put(*r.dual);
    out << ',';
    if (r.gap) put(*r.gap);
    out << ',' << r.elapsed_ns << '\n';
  }
}

}  // namespace scsvm
