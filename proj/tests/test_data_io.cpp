#include <doctest.h>

#include "helpers.hpp"
#include "scsvm/data_io.hpp"
#include "scsvm/model_io.hpp"
#include "scsvm/pairwise.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <unistd.h>

using namespace scsvm;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name, const std::string& content = "") {
    path = (std::filesystem::temp_directory_path() /
            ("scsvm_test_" + std::to_string(::getpid()) + "_" + name))
               .string();
    if (!content.empty()) {
      std::ofstream out(path);
      out << content;
    }
  }
  ~TempFile() { std::remove(path.c_str()); }
};

RawDataset tiny_raw() {
  RawDataset raw;
  raw.features = dmat(3, 2);
  raw.features << 1.0, -2.0, 0.25, 0.0, -1.5, 3.5;
  raw.labels = {1.0, -1.0, 1.0};
  return raw;
}

}  // namespace

TEST_CASE("sparse parser on a hand-written file") {
  TempFile f("a.svm",
             "# comment line\n"
             "+1 1:0.5 3:-2\n"
             "\n"
             "-1 2:1.25\n");
  auto raw = load_dataset(f.path, DataFormat::SparseIndexValue);
  REQUIRE(raw.n() == 2);
  REQUIRE(raw.d() == 3);
  CHECK(raw.features(0, 0) == 0.5);
  CHECK(raw.features(0, 1) == 0.0);
  CHECK(raw.features(0, 2) == -2.0);
  CHECK(raw.features(1, 0) == 0.0);
  CHECK(raw.features(1, 1) == 1.25);
  CHECK(raw.features(1, 2) == 0.0);
  CHECK(raw.labels[0] == 1.0);
  CHECK(raw.labels[1] == -1.0);

  // d_hint widens the matrix; too-small d_hint is an error
  auto wide = load_dataset(f.path, DataFormat::SparseIndexValue, false, 5);
  CHECK(wide.d() == 5);
  CHECK_THROWS_AS(load_dataset(f.path, DataFormat::SparseIndexValue, false, 2),
                  std::runtime_error);
}

TEST_CASE("sparse parser rejects malformed lines with the line number") {
  auto expect_throw = [](const std::string& body, const std::string& needle) {
    TempFile f("bad.svm", body);
    try {
      load_dataset(f.path, DataFormat::SparseIndexValue);
      FAIL("expected a parse error for: " << body);
    } catch (const std::runtime_error& e) {
      std::string msg = e.what();
      CHECK(msg.find(needle) != std::string::npos);
      CHECK(msg.find(":1:") != std::string::npos);
    }
  };
  expect_throw("+2 1:0.5\n", "label");
  expect_throw("abc 1:0.5\n", "label");
  expect_throw("+1 0:0.5\n", "1-based");
  expect_throw("+1 1:\n", "");
  expect_throw("+1 :0.5\n", "");
  expect_throw("+1 1:x\n", "");

  TempFile empty("empty.svm", "# nothing\n");
  CHECK_THROWS_WITH_AS(load_dataset(empty.path, DataFormat::SparseIndexValue),
                       doctest::Contains("no examples"), std::runtime_error);
  CHECK_THROWS_AS(load_dataset("/nonexistent/nope.svm", DataFormat::SparseIndexValue),
                  std::runtime_error);
}

TEST_CASE("zero-one labels are accepted only when asked for") {
  TempFile f("zo.svm", "1 1:1.0\n0 2:1.0\n");
  CHECK_THROWS_AS(load_dataset(f.path, DataFormat::SparseIndexValue),
                  std::runtime_error);
  auto raw = load_dataset(f.path, DataFormat::SparseIndexValue, true);
  CHECK(raw.labels[0] == 1.0);
  CHECK(raw.labels[1] == -1.0);
}

TEST_CASE("dense csv round trip preserves every bit") {
  auto raw = tiny_raw();
  raw.features(0, 0) = 0.1 + 0.2;  // not exactly representable sums
  raw.features(2, 1) = 1.0 / 3.0;
  TempFile f("rt.csv");
  write_dataset(f.path, raw, DataFormat::DenseCsv);
  auto back = load_dataset(f.path, DataFormat::DenseCsv);
  REQUIRE(back.n() == raw.n());
  REQUIRE(back.d() == raw.d());
  CHECK(back.features == raw.features);
  CHECK(back.labels == raw.labels);
}

TEST_CASE("sparse round trip preserves every bit") {
  auto raw = tiny_raw();
  raw.features(1, 0) = -1.0 / 7.0;
  TempFile f("rt.svm");
  write_dataset(f.path, raw, DataFormat::SparseIndexValue);
  auto back = load_dataset(f.path, DataFormat::SparseIndexValue);
  REQUIRE(back.n() == raw.n());
  CHECK(back.features == raw.features);
  CHECK(back.labels == raw.labels);
}

TEST_CASE("dense csv parser errors") {
  TempFile nohdr("nohdr.csv", "1,2,3\n");
  CHECK_THROWS_AS(load_dataset(nohdr.path, DataFormat::DenseCsv), std::runtime_error);
  TempFile ragged("ragged.csv", "label,f0,f1\n1,0.5,0.5\n-1,0.25\n");
  CHECK_THROWS_AS(load_dataset(ragged.path, DataFormat::DenseCsv), std::runtime_error);
}

TEST_CASE("unit normalization") {
  RawDataset raw;
  raw.features = dmat(1, 2);
  raw.features << 3.0, 4.0;
  raw.labels = {1.0};
  auto out = normalize_unit(raw);
  CHECK(out.features(0, 0) == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(out.features(0, 1) == doctest::Approx(0.8).epsilon(1e-15));

  std::mt19937_64 rng(51);
  std::normal_distribution<double> normal(0.0, 2.0);
  RawDataset big;
  big.features = dmat(40, 7);
  for (Eigen::Index i = 0; i < 40; ++i)
    for (Eigen::Index h = 0; h < 7; ++h) big.features(i, h) = normal(rng);
  big.labels.assign(40, 1.0);
  auto nb = normalize_unit(big);
  for (Eigen::Index i = 0; i < 40; ++i)
    CHECK(nb.features.row(i).norm() == doctest::Approx(1.0).epsilon(1e-12));

  RawDataset zero;
  zero.features = dmat::Zero(2, 3);
  zero.features(0, 0) = 1.0;
  zero.labels = {1.0, -1.0};
  CHECK_THROWS_WITH_AS(normalize_unit(zero), doctest::Contains("example 1"),
                       std::runtime_error);
}

TEST_CASE("sign mask application negates and scales columns") {
  RawDataset raw;
  raw.features = dmat(2, 2);
  raw.features << 1.0, 5.0, 2.0, -3.0;
  raw.labels = {1.0, -1.0};
  auto [data, mask] = apply_sign_mask(raw, {0}, {1});

  // column i = y_i * (negated features of example i)
  CHECK(data.X(0, 0) == 1.0);
  CHECK(data.X(1, 0) == -5.0);
  CHECK(data.X(0, 1) == -2.0);
  CHECK(data.X(1, 1) == -3.0);
  CHECK(mask.sigma == std::vector<std::uint8_t>{1, 1});
  CHECK(mask.negated == std::vector<std::uint8_t>{0, 1});
  CHECK(mask.pos_idx == std::vector<int>{0, 1});
  CHECK(mask.neg_idx == std::vector<int>{1});
  CHECK(data.R == doctest::Approx(data.recompute_R()));
  CHECK_NOTHROW(data.validate());
  CHECK_THROWS_AS(apply_sign_mask(raw, {0}, {0}), std::invalid_argument);
}

TEST_CASE("sign mask file round trip and errors") {
  TempFile f("mask.txt");
  write_sign_mask_file(f.path, {0, 2}, {1});
  auto [pos, neg] = load_sign_mask_file(f.path);
  CHECK(pos == std::vector<int>{0, 2});
  CHECK(neg == std::vector<int>{1});

  TempFile bad1("m1.txt", "0 +\n1 *\n");
  CHECK_THROWS_AS(load_sign_mask_file(bad1.path), std::runtime_error);
  TempFile bad2("m2.txt", "x +\n");
  CHECK_THROWS_AS(load_sign_mask_file(bad2.path), std::runtime_error);
  TempFile bad3("m3.txt", "0 + extra\n");
  CHECK_THROWS_AS(load_sign_mask_file(bad3.path), std::runtime_error);
  TempFile ok("m4.txt", "# header\n3 -\n\n1 +\n");
  auto [p2, n2] = load_sign_mask_file(ok.path);
  CHECK(p2 == std::vector<int>{1});
  CHECK(n2 == std::vector<int>{3});
}

TEST_CASE("similarity matrix loading") {
  TempFile m("sim.csv", "1.0,0.5\n0.5,1.0\n");
  TempFile l("lab.txt", "+1\n-1\n");
  auto sim = load_similarity_csv(m.path, l.path);
  CHECK(sim.S(0, 1) == 0.5);
  CHECK(sim.labels == std::vector<double>{1.0, -1.0});

  TempFile mbad("simbad.csv", "1.0,0.5\n0.5\n");
  CHECK_THROWS_AS(load_similarity_csv(mbad.path, l.path), std::runtime_error);
  TempFile mrect("simrect.csv", "1.0,0.5,0.1\n0.5,1.0,0.2\n");
  CHECK_THROWS_AS(load_similarity_csv(mrect.path, l.path), std::runtime_error);
  TempFile lshort("labshort.txt", "+1\n");
  CHECK_THROWS_AS(load_similarity_csv(m.path, lshort.path), std::runtime_error);
}

TEST_CASE("pairwise construction reorders positives first") {
  SimilarityMatrix sim;
  sim.S = dmat(4, 4);
  // S(i,j) = 10*i + j so provenance of every entry is readable
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) sim.S(i, j) = 10.0 * i + j;
  sim.labels = {-1.0, 1.0, -1.0, 1.0};

  auto pw = build_pairwise(sim);
  CHECK(pw.n_pos == 2);
  CHECK(pw.order == std::vector<int>{1, 3, 0, 2});
  REQUIRE(pw.raw.n() == 4);
  REQUIRE(pw.raw.d() == 4);
  // raw(i,j) = S(order[i], order[j]), before any negation
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      CHECK(pw.raw.features(i, j) ==
            10.0 * pw.order[static_cast<size_t>(i)] + pw.order[static_cast<size_t>(j)]);
  CHECK(pw.raw.labels == std::vector<double>{1.0, 1.0, -1.0, -1.0});

  // first n_pos weights constrained non-negative, the rest flipped
  CHECK(pw.mask.sigma == std::vector<std::uint8_t>{1, 1, 1, 1});
  CHECK(pw.mask.negated == std::vector<std::uint8_t>{0, 0, 1, 1});
  CHECK(pw.data.d() == pw.data.n());

  SimilarityMatrix single;
  single.S = dmat::Identity(2, 2);
  single.labels = {1.0, 1.0};
  CHECK_THROWS_AS(build_pairwise(single), std::invalid_argument);
}

TEST_CASE("fingerprint is stable and sensitive") {
  auto raw = tiny_raw();
  auto fp1 = fingerprint(raw);
  auto fp2 = fingerprint(raw);
  CHECK(fp1 == fp2);

  auto mod = raw;
  mod.features(0, 0) += 1e-15;
  CHECK(fingerprint(mod) != fp1);
  auto flip = raw;
  flip.labels[0] = -1.0;
  CHECK(fingerprint(flip) != fp1);

  // survives a serialization round trip
  TempFile f("fp.csv");
  write_dataset(f.path, raw, DataFormat::DenseCsv);
  CHECK(fingerprint(load_dataset(f.path, DataFormat::DenseCsv)) == fp1);
}

TEST_CASE("model file round trip") {
  PrimalModel m;
  m.w = dvec(3);
  m.w << 0.5, -0.25, 1.0 / 3.0;
  m.lambda = 0.0125;
  m.mask = SignMask::make(3, {0}, {2});
  m.solver = "fw";
  m.iterations = 321;
  m.final_gap = 4.5e-5;
  m.certified = true;

  ModelFile file = to_model_file(m, 0xdeadbeefcafe1234ull);
  CHECK(file.schema == 1);
  // user space: the negated coordinate flips sign
  CHECK(file.w_user[2] == -m.w[2]);

  TempFile f("model.json");
  save_model(f.path, file);
  ModelFile back = load_model(f.path);
  CHECK(back.w_user == file.w_user);
  CHECK(back.sigma == file.sigma);
  CHECK(back.negated == file.negated);
  CHECK(back.lambda == file.lambda);
  CHECK(back.solver == file.solver);
  CHECK(back.iterations == file.iterations);
  REQUIRE(back.final_gap.has_value());
  CHECK(*back.final_gap == *file.final_gap);
  CHECK(back.certified == file.certified);
  CHECK(back.dataset_fingerprint == file.dataset_fingerprint);

  PrimalModel rec = to_primal_model(back);
  CHECK(rec.w == m.w);
  CHECK(rec.mask.sigma == m.mask.sigma);
  CHECK(rec.mask.negated == m.mask.negated);
  CHECK(rec.mask.pos_idx == m.mask.pos_idx);

  // absent gap serializes as null and comes back absent
  PrimalModel nogap = m;
  nogap.final_gap.reset();
  nogap.certified = false;
  save_model(f.path, to_model_file(nogap, 1));
  CHECK_FALSE(load_model(f.path).final_gap.has_value());
}

TEST_CASE("trace csv layout") {
  std::vector<TraceRecord> rows;
  rows.push_back({0, 1.0, 0.0, 1.0, 10});
  rows.push_back({1, 0.5, std::nullopt, std::nullopt, 20});
  TempFile f("trace.csv");
  write_trace_csv(f.path, rows);
  std::ifstream in(f.path);
  std::string line;
  std::getline(in, line);
  CHECK(line == "iter,primal,dual,gap,elapsed_ns");
  std::getline(in, line);
  CHECK(line == "0,1,0,1,10");
  std::getline(in, line);
  CHECK(line == "1,0.5,,,20");
  CHECK_FALSE(std::getline(in, line));
}

TEST_CASE("label file loading") {
  TempFile f("labels.txt", "+1\n-1\n1\n");
  auto ys = load_labels(f.path);
  CHECK(ys == std::vector<double>{1.0, -1.0, 1.0});
  TempFile zo("labels01.txt", "1\n0\n");
  CHECK_THROWS_AS(load_labels(zo.path), std::runtime_error);
  CHECK(load_labels(zo.path, true) == std::vector<double>{1.0, -1.0});
}
