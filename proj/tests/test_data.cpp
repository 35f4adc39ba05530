#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "codeq/data.hpp"
#include "codeq/error.hpp"
#include "codeq/rng.hpp"

using namespace codeq;

namespace {

const std::filesystem::path kTestData = CODEQ_TEST_DATA_DIR;

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected codeq::Error");
  return Errc::invalid_argument;
}

std::string message_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("bundled IRIS file") {
  const Dataset d = load_iris(default_datasets_dir());
  CHECK(d.rows() == 150);
  CHECK(d.features.cols() == 4);
  CHECK(d.targets.cols() == 3);
  CHECK(d.task == Task::classification);
  CHECK(std::set<int>(d.labels.begin(), d.labels.end()) == std::set<int>{0, 1, 2});
  CHECK(std::count(d.labels.begin(), d.labels.end(), 1) == 50);
  CHECK(d.features(0, 0) == 5.1);
  CHECK((d.targets.rowwise().sum().array() == 1.0).all());
}

TEST_CASE("bundled Boston housing file") {
  const Dataset d = load_boston_housing(default_datasets_dir());
  CHECK(d.rows() == 506);
  CHECK(d.features.cols() == 13);
  CHECK(d.targets.cols() == 1);
  CHECK(d.features(0, 0) == 0.00632);
  CHECK(d.targets(0, 0) == 24.0);
  CHECK(d.targets(505, 0) == 11.9);
}

TEST_CASE("load_csv errors") {
  const CsvSchema schema{{0, 1}, {2}, true, Task::regression};
  SUBCASE("missing file") {
    CHECK(code_of([&] { load_csv(kTestData / "absent.csv", schema, "x"); }) == Errc::io_error);
  }
  SUBCASE("non-numeric field names its line") {
    CHECK(code_of([&] { load_csv(kTestData / "malformed.csv", schema, "x"); }) == Errc::parse_error);
    CHECK(message_of([&] { load_csv(kTestData / "malformed.csv", schema, "x"); })
              .find("line 3") != std::string::npos);
  }
  SUBCASE("short row names its line") {
    CHECK(message_of([&] { load_csv(kTestData / "short_row.csv", schema, "x"); })
              .find("line 3") != std::string::npos);
  }
  SUBCASE("schema beyond the file width") {
    const CsvSchema wide{{0, 1}, {7}, true, Task::regression};
    CHECK(code_of([&] { load_csv(kTestData / "tiny_regression.csv", wide, "x"); }) ==
          Errc::schema_mismatch);
  }
  SUBCASE("overlapping roles") {
    const CsvSchema overlap{{0, 1}, {1}, true, Task::regression};
    CHECK(code_of([&] { load_csv(kTestData / "tiny_regression.csv", overlap, "x"); }) ==
          Errc::schema_mismatch);
  }
  SUBCASE("header handled as data when the flag is off") {
    const CsvSchema no_header{{0, 1}, {2}, false, Task::regression};
    CHECK(code_of([&] { load_csv(kTestData / "tiny_regression.csv", no_header, "x"); }) ==
          Errc::parse_error);
  }
}

TEST_CASE("load_csv is deterministic") {
  const CsvSchema schema{{0, 1}, {2}, true, Task::regression};
  const Dataset a = load_csv(kTestData / "tiny_regression.csv", schema, "tiny");
  const Dataset b = load_csv(kTestData / "tiny_regression.csv", schema, "tiny");
  CHECK(a.rows() == 12);
  CHECK(a.features == b.features);
  CHECK(a.targets == b.targets);
}

TEST_CASE("holdout_split") {
  SUBCASE("House sizes") {
    const Split s = holdout_split(506, 430, 1);
    CHECK(s.train.size() == 430);
    CHECK(s.test.size() == 76);
  }
  SUBCASE("IRIS sizes") {
    const Split s = holdout_split(150, 127, 1);
    CHECK(s.train.size() == 127);
    CHECK(s.test.size() == 23);
  }
  SUBCASE("empty test or train part is rejected") {
    CHECK(code_of([] { holdout_split(150, 150, 1); }) == Errc::invalid_count);
    CHECK(code_of([] { holdout_split(150, 0, 1); }) == Errc::invalid_count);
  }
  SUBCASE("disjoint, covering and seed-determined") {
    RngStream meta(3);
    for (int t = 0; t < 100; ++t) {
      const std::size_t rows = 2 + meta.below(300);
      const std::size_t n_train = 1 + meta.below(rows - 1);
      const std::uint64_t seed = meta.next_u64();
      const Split s = holdout_split(rows, n_train, seed);
      std::vector<std::size_t> all = s.train;
      all.insert(all.end(), s.test.begin(), s.test.end());
      std::sort(all.begin(), all.end());
      REQUIRE(all.size() == rows);
      for (std::size_t k = 0; k < rows; ++k) REQUIRE(all[k] == k);
      REQUIRE(holdout_split(rows, n_train, seed).train == s.train);
    }
    CHECK(holdout_split(506, 430, 1).train != holdout_split(506, 430, 2).train);
  }
}

TEST_CASE("minmax_normalize") {
  Dataset d;
  d.features.resize(4, 2);
  d.features << 0, 7, 10, 7, 5, 7, 20, 3;
  d.targets = Eigen::MatrixXd::Constant(4, 1, 42.0);
  const Split split{{0, 1}, {2, 3}};
  const auto [scaled, record] = minmax_normalize(d, split);

  CHECK(scaled.features(0, 0) == 0.0);
  CHECK(scaled.features(1, 0) == 1.0);
  CHECK(scaled.features(2, 0) == 0.5);
  CHECK(scaled.features(3, 0) == 2.0);  // test rows may leave [0, 1]
  CHECK(scaled.features.col(1).head(3).isZero());  // constant on train
  CHECK(scaled.targets == d.targets);

  SUBCASE("inverse restores the original features") {
    const Eigen::MatrixXd back = record.inverse(scaled.features);
    CHECK(back.col(0).isApprox(d.features.col(0)));
    CHECK(back(0, 1) == 7.0);
  }
  SUBCASE("rescaling twice is not the same as once") {
    CHECK(record.apply(scaled.features) != scaled.features);
  }
  SUBCASE("test rows never influence the record") {
    Dataset poisoned = d;
    poisoned.features.row(2).setConstant(1e9);
    poisoned.features.row(3).setConstant(-1e9);
    const ScaleRecord r2 = minmax_normalize(poisoned, split).second;
    CHECK(r2.minimum == record.minimum);
    CHECK(r2.range == record.range);
  }
}

TEST_CASE("normalized IRIS training rows span [0, 1]") {
  const Dataset d = load_iris(default_datasets_dir());
  const Split s = holdout_split(d.rows(), 127, 9);
  const Dataset scaled = minmax_normalize(d, s).first;
  const Dataset train = subset(scaled, s.train);
  for (Eigen::Index c = 0; c < 4; ++c) {
    CHECK(train.features.col(c).minCoeff() == 0.0);
    CHECK(train.features.col(c).maxCoeff() == 1.0);
  }
  CHECK(train.labels.size() == 127);
}

TEST_CASE("one_hot") {
  const Eigen::MatrixXd m = one_hot(std::vector<int>{0, 2}, 3);
  Eigen::MatrixXd expected(2, 3);
  expected << 1, 0, 0, 0, 0, 1;
  CHECK(m == expected);
  CHECK(one_hot(std::vector<int>{0, 0, 0}, 1) == Eigen::MatrixXd::Ones(3, 1));
  CHECK(code_of([] { one_hot(std::vector<int>{3}, 3); }) == Errc::label_out_of_range);
  CHECK(code_of([] { one_hot(std::vector<int>{-1}, 3); }) == Errc::label_out_of_range);
}

TEST_CASE("synthetic oil proxy") {
  const Dataset a = synthetic_oil_proxy(kOilProxyRows, 7);
  CHECK(a.rows() == 288);
  CHECK(a.features.cols() == 5);
  CHECK(a.targets.cols() == 1);
  CHECK(a.synthetic);
  CHECK(a.features.allFinite());
  CHECK(a.targets.allFinite());

  const Dataset b = synthetic_oil_proxy(kOilProxyRows, 7);
  CHECK(a.features == b.features);
  CHECK(a.targets == b.targets);
  CHECK(synthetic_oil_proxy(kOilProxyRows, 8).targets != a.targets);

  // Frozen checksum of the generated matrix; changes only when the generator does.
  const double checksum = a.features.sum() + a.targets.sum();
  CHECK(checksum == doctest::Approx(8193.0468228555983).epsilon(1e-12));

  const Dataset clean = synthetic_oil_proxy(kOilProxyRows, 7, 0.0);
  CHECK(clean.features == a.features);
  for (Eigen::Index r = 0; r < clean.features.rows(); ++r) {
    REQUIRE(clean.targets(r, 0) == oil_proxy_price(clean.features.row(r).transpose()));
  }
  CHECK(code_of([] { synthetic_oil_proxy(9, 1); }) == Errc::invalid_count);

  Eigen::VectorXd balanced(5);
  balanced << 1.0, 1.0, 1.0, 1.0, 0.0;
  CHECK(oil_proxy_price(balanced) == 32.0);
}
