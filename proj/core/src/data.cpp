#include "codeq/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>
#include <string_view>

#include "codeq/error.hpp"
#include "codeq/rng.hpp"

namespace codeq {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

bool parse_double(std::string_view field, double& out) {
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

}  // namespace

Dataset load_csv(const std::filesystem::path& path, const CsvSchema& schema, std::string name) {
  if (schema.feature_columns.empty() || schema.target_columns.empty()) {
    throw Error(Errc::schema_mismatch, "schema needs feature and target columns");
  }
  if (schema.task == Task::classification && schema.target_columns.size() != 1) {
    throw Error(Errc::schema_mismatch, "classification needs exactly one label column");
  }
  for (auto c : schema.target_columns) {
    if (std::find(schema.feature_columns.begin(), schema.feature_columns.end(), c) !=
        schema.feature_columns.end()) {
      throw Error(Errc::schema_mismatch, "column " + std::to_string(c) + " is both feature and target");
    }
  }

  std::ifstream in(path);
  if (!in) throw Error(Errc::io_error, "cannot open " + path.string());

  const std::size_t needed =
      1 + std::max(*std::max_element(schema.feature_columns.begin(), schema.feature_columns.end()),
                   *std::max_element(schema.target_columns.begin(), schema.target_columns.end()));

  std::vector<std::vector<double>> rows;
  std::size_t width = 0;
  std::string line;
  std::size_t line_no = 0;
  bool header_pending = schema.has_header;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    if (header_pending) {
      header_pending = false;
      continue;
    }
    const auto fields = split_fields(line);
    if (width == 0) {
      width = fields.size();
      if (width < needed) {
        throw Error(Errc::schema_mismatch, "file has " + std::to_string(width) +
                                               " columns, schema references column " +
                                               std::to_string(needed - 1));
      }
    }
    if (fields.size() != width) {
      throw Error(Errc::parse_error, path.string() + ": line " + std::to_string(line_no) +
                                         " has " + std::to_string(fields.size()) +
                                         " fields, expected " + std::to_string(width));
    }
    std::vector<double> row(width);
    for (std::size_t c = 0; c < width; ++c) {
      if (!parse_double(fields[c], row[c])) {
        throw Error(Errc::parse_error, path.string() + ": line " + std::to_string(line_no) +
                                           " column " + std::to_string(c + 1) + ": '" +
                                           std::string(fields[c]) + "' is not a number");
      }
    }
    rows.push_back(std::move(row));
  }
  if (in.bad()) throw Error(Errc::io_error, "read failure on " + path.string());
  if (rows.empty()) throw Error(Errc::empty_dataset, path.string() + " has no data rows");

  const auto n = static_cast<Eigen::Index>(rows.size());
  Dataset d;
  d.name = std::move(name);
  d.task = schema.task;
  d.features.resize(n, static_cast<Eigen::Index>(schema.feature_columns.size()));
  for (Eigen::Index r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < schema.feature_columns.size(); ++c) {
      d.features(r, static_cast<Eigen::Index>(c)) = rows[static_cast<std::size_t>(r)][schema.feature_columns[c]];
    }
  }

  if (schema.task == Task::classification) {
    const std::size_t col = schema.target_columns.front();
    d.labels.reserve(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const double v = rows[r][col];
      if (v < 0.0 || v != std::floor(v)) {
        throw Error(Errc::label_out_of_range, "row " + std::to_string(r + 1) +
                                                  " label " + std::to_string(v) +
                                                  " is not a non-negative integer");
      }
      d.labels.push_back(static_cast<int>(v));
    }
    const int k = *std::max_element(d.labels.begin(), d.labels.end()) + 1;
    d.targets = one_hot(d.labels, static_cast<std::size_t>(k));
  } else {
    d.targets.resize(n, static_cast<Eigen::Index>(schema.target_columns.size()));
    for (Eigen::Index r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < schema.target_columns.size(); ++c) {
        d.targets(r, static_cast<Eigen::Index>(c)) = rows[static_cast<std::size_t>(r)][schema.target_columns[c]];
      }
    }
  }
  return d;
}

Dataset load_iris(const std::filesystem::path& dir) {
  CsvSchema schema{{0, 1, 2, 3}, {4}, true, Task::classification};
  return load_csv(dir / "iris.csv", schema, "iris");
}

Dataset load_boston_housing(const std::filesystem::path& dir) {
  CsvSchema schema;
  schema.feature_columns.resize(13);
  std::iota(schema.feature_columns.begin(), schema.feature_columns.end(), std::size_t{0});
  schema.target_columns = {13};
  return load_csv(dir / "boston_housing.csv", schema, "house");
}

std::filesystem::path default_datasets_dir() {
#ifdef CODEQ_DEFAULT_DATASETS_DIR
  return CODEQ_DEFAULT_DATASETS_DIR;
#else
  return "datasets";
#endif
}

Split holdout_split(std::size_t rows, std::size_t n_train, std::uint64_t seed) {
  if (n_train == 0 || n_train >= rows) {
    throw Error(Errc::invalid_count, "training count " + std::to_string(n_train) +
                                         " must lie in (0, " + std::to_string(rows) + ")");
  }
  std::vector<std::size_t> order(rows);
  std::iota(order.begin(), order.end(), std::size_t{0});
  RngStream rng(seed);
  for (std::size_t i = 0; i < n_train; ++i) {
    std::swap(order[i], order[i + rng.below(rows - i)]);
  }
  Split s;
  s.train.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_train));
  s.test.assign(order.begin() + static_cast<std::ptrdiff_t>(n_train), order.end());
  std::sort(s.train.begin(), s.train.end());
  std::sort(s.test.begin(), s.test.end());
  return s;
}

Dataset subset(const Dataset& d, std::span<const std::size_t> rows) {
  Dataset out;
  out.name = d.name;
  out.task = d.task;
  out.synthetic = d.synthetic;
  out.features.resize(static_cast<Eigen::Index>(rows.size()), d.features.cols());
  out.targets.resize(static_cast<Eigen::Index>(rows.size()), d.targets.cols());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (rows[k] >= d.rows()) throw Error(Errc::index_out_of_range, "row " + std::to_string(rows[k]));
    const auto r = static_cast<Eigen::Index>(rows[k]);
    out.features.row(static_cast<Eigen::Index>(k)) = d.features.row(r);
    out.targets.row(static_cast<Eigen::Index>(k)) = d.targets.row(r);
    if (!d.labels.empty()) out.labels.push_back(d.labels[rows[k]]);
  }
  return out;
}

Eigen::MatrixXd ScaleRecord::apply(const Eigen::MatrixXd& features) const {
  Eigen::MatrixXd out(features.rows(), features.cols());
  for (Eigen::Index c = 0; c < features.cols(); ++c) {
    if (range[c] > 0.0) {
      out.col(c) = (features.col(c).array() - minimum[c]) / range[c];
    } else {
      out.col(c).setZero();
    }
  }
  return out;
}

Eigen::MatrixXd ScaleRecord::inverse(const Eigen::MatrixXd& scaled) const {
  Eigen::MatrixXd out(scaled.rows(), scaled.cols());
  for (Eigen::Index c = 0; c < scaled.cols(); ++c) {
    out.col(c) = (scaled.col(c).array() * range[c] + minimum[c]).matrix();
  }
  return out;
}

std::pair<Dataset, ScaleRecord> minmax_normalize(const Dataset& d, const Split& split) {
  if (split.train.empty()) throw Error(Errc::invalid_count, "training part is empty");
  const Eigen::Index cols = d.features.cols();
  ScaleRecord record;
  record.minimum = Eigen::VectorXd::Constant(cols, std::numeric_limits<double>::infinity());
  Eigen::VectorXd maximum = Eigen::VectorXd::Constant(cols, -std::numeric_limits<double>::infinity());
  for (std::size_t r : split.train) {
    if (r >= d.rows()) throw Error(Errc::index_out_of_range, "row " + std::to_string(r));
    const auto row = d.features.row(static_cast<Eigen::Index>(r)).transpose();
    record.minimum = record.minimum.cwiseMin(row);
    maximum = maximum.cwiseMax(row);
  }
  record.range = maximum - record.minimum;

  Dataset out = d;
  out.features = record.apply(d.features);
  return {std::move(out), std::move(record)};
}

Eigen::MatrixXd one_hot(std::span<const int> labels, std::size_t classes) {
  if (classes == 0) throw Error(Errc::invalid_count, "class count must be positive");
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(labels.size()),
                                              static_cast<Eigen::Index>(classes));
  for (std::size_t r = 0; r < labels.size(); ++r) {
    if (labels[r] < 0 || static_cast<std::size_t>(labels[r]) >= classes) {
      throw Error(Errc::label_out_of_range, "label " + std::to_string(labels[r]) + " at row " +
                                                std::to_string(r) + " not in [0, " +
                                                std::to_string(classes) + ")");
    }
    out(static_cast<Eigen::Index>(r), labels[r]) = 1.0;
  }
  return out;
}

double oil_proxy_price(const Eigen::VectorXd& f) {
  const double supply = f[0];
  const double demand = f[1];
  const double capacity = f[2];
  const double throughput = f[3];
  const double stocks = f[4];
  const double utilisation = throughput / capacity;
  return 20.0 + 25.0 * std::tanh(3.0 * (demand - supply)) + 12.0 * utilisation * utilisation -
         6.0 * stocks;
}

Dataset synthetic_oil_proxy(std::size_t n, std::uint64_t seed, double noise) {
  if (n < 10) throw Error(Errc::invalid_count, "oil proxy needs at least 10 rows");
  constexpr double two_pi = 2.0 * std::numbers::pi;

  RngStream rng(seed);
  Dataset d;
  d.name = "oil-proxy";
  d.task = Task::regression;
  d.synthetic = true;
  d.features.resize(static_cast<Eigen::Index>(n), 5);
  d.targets.resize(static_cast<Eigen::Index>(n), 1);

  double drift[5] = {0.0, 0.0, 0.0, 0.0, 0.0};
  for (std::size_t m = 0; m < n; ++m) {
    for (double& a : drift) a = 0.9 * a + 0.03 * rng.normal();
    const double month = static_cast<double>(m);
    const double trend = month / static_cast<double>(n - 1);
    Eigen::VectorXd row(5);
    row[0] = 1.0 + 0.08 * std::sin(two_pi * month / 12.0) + drift[0];
    row[1] = 1.0 + 0.06 * std::sin(two_pi * month / 12.0 + 1.0) + 0.05 * trend + drift[1];
    row[2] = 1.2 + 0.1 * trend + 0.5 * drift[2];
    row[3] = 0.95 + 0.05 * std::sin(two_pi * month / 6.0) + drift[3];
    row[4] = 0.5 + 0.2 * std::sin(two_pi * month / 24.0) + drift[4];

    const auto r = static_cast<Eigen::Index>(m);
    d.features.row(r) = row.transpose();
    d.targets(r, 0) = oil_proxy_price(row) + noise * rng.normal();
  }
  return d;
}

}  // namespace codeq
