#include "scsvm/data_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

namespace scsvm {

namespace {

[[noreturn]] void parse_fail(const std::string& path, size_t line, const std::string& what) {
  throw std::runtime_error(path + ":" + std::to_string(line) + ": " + what);
}

double parse_label(const std::string& tok, bool labels01, const std::string& path,
                   size_t line) {
  double v;
  try {
    size_t pos = 0;
    v = std::stod(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument("");
  } catch (...) {
    parse_fail(path, line, "bad label '" + tok + "'");
  }
  if (labels01) {
    if (v == 0.0) return -1.0;
    if (v == 1.0) return 1.0;
    parse_fail(path, line, "label must be 0 or 1");
  }
  if (v == 1.0 || v == -1.0) return v;
  parse_fail(path, line, "label must be -1 or +1");
}

double parse_double(const std::string& tok, const std::string& path, size_t line) {
  try {
    size_t pos = 0;
    double v = std::stod(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    parse_fail(path, line, "bad number '" + tok + "'");
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream ss(s);
  while (std::getline(ss, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

RawDataset load_sparse(const std::string& path, bool labels01, Eigen::Index d_hint) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::vector<double> labels;
  std::vector<std::vector<std::pair<Eigen::Index, double>>> rows;
  Eigen::Index dmax = 0;
  std::string line;
  size_t lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::string tok;
    if (!(ss >> tok)) continue;
    labels.push_back(parse_label(tok, labels01, path, lineno));
    std::vector<std::pair<Eigen::Index, double>> row;
    while (ss >> tok) {
      auto colon = tok.find(':');
      if (colon == std::string::npos || colon == 0 || colon + 1 == tok.size())
        parse_fail(path, lineno, "expected idx:val, got '" + tok + "'");
      long idx;
      try {
        size_t pos = 0;
        idx = std::stol(tok.substr(0, colon), &pos);
        if (pos != colon) throw std::invalid_argument("");
      } catch (...) {
        parse_fail(path, lineno, "bad feature index in '" + tok + "'");
      }
      if (idx < 1) parse_fail(path, lineno, "feature indices are 1-based");
      if (d_hint > 0 && idx > d_hint)
        parse_fail(path, lineno, "feature index " + std::to_string(idx) +
                                     " exceeds declared dimension " + std::to_string(d_hint));
      double val = parse_double(tok.substr(colon + 1), path, lineno);
      row.emplace_back(static_cast<Eigen::Index>(idx) - 1, val);
      dmax = std::max(dmax, static_cast<Eigen::Index>(idx));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::runtime_error(path + ": no examples");
  Eigen::Index d = d_hint > 0 ? d_hint : dmax;
  if (d < 1) throw std::runtime_error(path + ": no features present");
  RawDataset raw;
  raw.features = dmat::Zero(static_cast<Eigen::Index>(rows.size()), d);
  raw.labels = std::move(labels);
  for (size_t i = 0; i < rows.size(); ++i)
    for (auto& [j, v] : rows[i]) raw.features(static_cast<Eigen::Index>(i), j) = v;
  return raw;
}

RawDataset load_dense_csv(const std::string& path, bool labels01) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::string line;
  size_t lineno = 0;
  if (!std::getline(f, line)) throw std::runtime_error(path + ": no examples");
  ++lineno;
  auto header = split(line, ',');
  if (header.empty() || header[0] != "label")
    parse_fail(path, lineno, "header must start with 'label'");
  Eigen::Index d = static_cast<Eigen::Index>(header.size()) - 1;
  if (d < 1) parse_fail(path, lineno, "no feature columns");
  std::vector<double> labels;
  std::vector<std::vector<double>> rows;
  while (std::getline(f, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto toks = split(line, ',');
    if (static_cast<Eigen::Index>(toks.size()) != d + 1)
      parse_fail(path, lineno, "expected " + std::to_string(d + 1) + " fields, got " +
                                   std::to_string(toks.size()));
    labels.push_back(parse_label(toks[0], labels01, path, lineno));
    std::vector<double> row(static_cast<size_t>(d));
    for (Eigen::Index j = 0; j < d; ++j)
      row[static_cast<size_t>(j)] = parse_double(toks[static_cast<size_t>(j) + 1], path, lineno);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::runtime_error(path + ": no examples");
  RawDataset raw;
  raw.features = dmat(static_cast<Eigen::Index>(rows.size()), d);
  raw.labels = std::move(labels);
  for (size_t i = 0; i < rows.size(); ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      raw.features(static_cast<Eigen::Index>(i), j) = rows[i][static_cast<size_t>(j)];
  return raw;
}

void write_double(std::ostream& os, double v) {
  char buf[32];
  snprintf(buf, sizeof buf, "%.17g", v);
  os << buf;
}

}  // namespace

RawDataset load_dataset(const std::string& path, DataFormat format, bool labels01,
                        Eigen::Index d_hint) {
  return format == DataFormat::SparseIndexValue ? load_sparse(path, labels01, d_hint)
                                                : load_dense_csv(path, labels01);
}

void write_dataset(const std::string& path, const RawDataset& raw, DataFormat format) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  if (format == DataFormat::SparseIndexValue) {
    for (Eigen::Index i = 0; i < raw.n(); ++i) {
      f << (raw.labels[static_cast<size_t>(i)] > 0 ? "+1" : "-1");
      for (Eigen::Index j = 0; j < raw.d(); ++j) {
        double v = raw.features(i, j);
        if (v != 0.0) {
          f << ' ' << (j + 1) << ':';
          write_double(f, v);
        }
      }
      f << '\n';
    }
  } else {
    f << "label";
    for (Eigen::Index j = 0; j < raw.d(); ++j) f << ",f" << j;
    f << '\n';
    for (Eigen::Index i = 0; i < raw.n(); ++i) {
      f << (raw.labels[static_cast<size_t>(i)] > 0 ? "+1" : "-1");
      for (Eigen::Index j = 0; j < raw.d(); ++j) {
        f << ',';
        write_double(f, raw.features(i, j));
      }
      f << '\n';
    }
  }
}

RawDataset normalize_unit(const RawDataset& raw) {
  RawDataset out = raw;
  for (Eigen::Index i = 0; i < out.n(); ++i) {
    double nrm = out.features.row(i).norm();
    if (nrm == 0.0)
      throw std::runtime_error("normalize_unit: example " + std::to_string(i) +
                               " is all zeros");
    out.features.row(i) /= nrm;
  }
  return out;
}

std::pair<Dataset, SignMask> apply_sign_mask(const RawDataset& raw,
                                             const std::vector<int>& pos,
                                             const std::vector<int>& neg) {
  SignMask mask = SignMask::make(raw.d(), pos, neg);
  Dataset data;
  data.X = raw.features.transpose();  // d x n
  for (int h : neg) data.X.row(h) = -data.X.row(h);
  for (Eigen::Index i = 0; i < raw.n(); ++i) {
    double y = raw.labels[static_cast<size_t>(i)];
    if (y != 1.0 && y != -1.0)
      throw std::invalid_argument("apply_sign_mask: labels must be -1 or +1");
    data.X.col(i) *= y;
  }
  data.labels = raw.labels;
  data.R = data.recompute_R();
  return {std::move(data), std::move(mask)};
}

std::pair<std::vector<int>, std::vector<int>> load_sign_mask_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::vector<int> pos, neg;
  std::string line;
  size_t lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    long idx;
    std::string sign;
    if (!(ss >> idx >> sign) || (sign != "+" && sign != "-"))
      parse_fail(path, lineno, "expected '<index> <+|->'");
    std::string rest;
    if (ss >> rest) parse_fail(path, lineno, "trailing content '" + rest + "'");
    if (idx < 0) parse_fail(path, lineno, "indices are 0-based and non-negative");
    (sign == "+" ? pos : neg).push_back(static_cast<int>(idx));
  }
  return {pos, neg};
}

void write_sign_mask_file(const std::string& path, const std::vector<int>& pos,
                          const std::vector<int>& neg) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  for (int h : pos) f << h << " +\n";
  for (int h : neg) f << h << " -\n";
}

std::vector<double> load_labels(const std::string& path, bool labels01) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::vector<double> labels;
  std::string line;
  size_t lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    labels.push_back(parse_label(line, labels01, path, lineno));
  }
  if (labels.empty()) throw std::runtime_error(path + ": no labels");
  return labels;
}

SimilarityMatrix load_similarity_csv(const std::string& matrix_path,
                                     const std::string& labels_path) {
  std::ifstream f(matrix_path);
  if (!f) throw std::runtime_error("cannot open " + matrix_path);
  std::vector<std::vector<double>> rows;
  std::string line;
  size_t lineno = 0;
  size_t width = 0;
  while (std::getline(f, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto toks = split(line, ',');
    if (width == 0) width = toks.size();
    if (toks.size() != width)
      parse_fail(matrix_path, lineno, "ragged row: expected " + std::to_string(width) +
                                          " entries, got " + std::to_string(toks.size()));
    std::vector<double> row;
    row.reserve(toks.size());
    for (auto& t : toks) row.push_back(parse_double(t, matrix_path, lineno));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::runtime_error(matrix_path + ": empty matrix");
  if (rows.size() != width)
    throw std::runtime_error(matrix_path + ": similarity matrix must be square, got " +
                             std::to_string(rows.size()) + "x" + std::to_string(width));
  SimilarityMatrix sim;
  sim.S = dmat(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(width));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < width; ++j)
      sim.S(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  sim.labels = load_labels(labels_path);
  if (sim.labels.size() != rows.size())
    throw std::runtime_error(labels_path + ": label count " +
                             std::to_string(sim.labels.size()) + " does not match matrix size " +
                             std::to_string(rows.size()));
  return sim;
}

std::uint64_t fingerprint(const RawDataset& raw) {
  constexpr std::uint64_t kOffset = 14695981039346656037ull;
  constexpr std::uint64_t kPrime = 1099511628211ull;
  std::uint64_t h = kOffset;
  auto mix_bytes = [&](const void* p, size_t len) {
    const auto* b = static_cast<const unsigned char*>(p);
    for (size_t i = 0; i < len; ++i) {
      h ^= b[i];
      h *= kPrime;
    }
  };
  std::int64_t n = raw.n(), d = raw.d();
  mix_bytes(&n, sizeof n);
  mix_bytes(&d, sizeof d);
  for (double y : raw.labels) mix_bytes(&y, sizeof y);
  for (Eigen::Index i = 0; i < raw.n(); ++i)
    for (Eigen::Index j = 0; j < raw.d(); ++j) {
      double v = raw.features(i, j);
      mix_bytes(&v, sizeof v);
    }
  return h;
}

}  // namespace scsvm
