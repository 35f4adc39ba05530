#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace codeq {

enum class Task { regression, classification };

struct Dataset {
  std::string name;
  Eigen::MatrixXd features;  // samples x attributes
  Eigen::MatrixXd targets;   // samples x outputs
  Task task = Task::regression;
  std::vector<int> labels;   // classification only
  bool synthetic = false;

  std::size_t rows() const noexcept { return static_cast<std::size_t>(features.rows()); }
};

/// Column roles for load_csv. For classification the single target column
/// holds integer labels in [0, k) and is expanded with one_hot.
struct CsvSchema {
  std::vector<std::size_t> feature_columns;
  std::vector<std::size_t> target_columns;
  bool has_header = true;
  Task task = Task::regression;
};

/// Parses a comma-separated file. Errors: io_error, parse_error (message
/// names the 1-based file line), schema_mismatch.
Dataset load_csv(const std::filesystem::path& path, const CsvSchema& schema, std::string name);

/// Bundled files, under `dir`.
Dataset load_iris(const std::filesystem::path& dir);
Dataset load_boston_housing(const std::filesystem::path& dir);

/// Directory holding the bundled datasets in the source tree.
std::filesystem::path default_datasets_dir();

struct Split {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

/// n_train rows drawn uniformly without replacement; the rest form the test
/// set. Both lists are returned in ascending row order.
Split holdout_split(std::size_t rows, std::size_t n_train, std::uint64_t seed);

Dataset subset(const Dataset& d, std::span<const std::size_t> rows);

/// Per-column affine map fitted on training rows: x -> (x - min) / range.
/// Constant columns have range 0 and map to 0.
struct ScaleRecord {
  Eigen::VectorXd minimum;
  Eigen::VectorXd range;

  Eigen::MatrixXd apply(const Eigen::MatrixXd& features) const;
  /// Undoes apply(); constant columns come back as their training value.
  Eigen::MatrixXd inverse(const Eigen::MatrixXd& scaled) const;
};

/// Scales every feature row with a record fitted on split.train only.
/// Targets are left untouched.
std::pair<Dataset, ScaleRecord> minmax_normalize(const Dataset& d, const Split& split);

Eigen::MatrixXd one_hot(std::span<const int> labels, std::size_t classes);

// Synthetic stand-in for a monthly crude-price regression task. Five
// index-style features follow seasonal cycles plus AR(1) drift, and the
// target is oil_proxy_price(features) plus Gaussian noise of the given
// standard deviation.
inline constexpr std::size_t kOilProxyRows = 288;
inline constexpr std::size_t kOilProxyTrainRows = 244;
inline constexpr double kOilProxyNoise = 1.5;

/// price = 20 + 25 tanh(3 (demand - supply)) + 12 (throughput / capacity)^2
///         - 6 stocks
/// with features ordered (supply, demand, capacity, throughput, stocks).
double oil_proxy_price(const Eigen::VectorXd& features);

/// Requires n >= 10.
Dataset synthetic_oil_proxy(std::size_t n, std::uint64_t seed, double noise = kOilProxyNoise);

}  // namespace codeq
