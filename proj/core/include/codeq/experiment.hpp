#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "codeq/core.hpp"
#include "codeq/data.hpp"
#include "codeq/neural.hpp"

namespace codeq {

enum class Algorithm { codeq, pso, sde };

std::string_view to_string(Algorithm a) noexcept;
/// Throws config_error on an unknown name.
Algorithm parse_algorithm(std::string_view name);

struct ExperimentConfig {
  /// "iris", "house", "oil-proxy", or a path to a CSV file.
  std::string dataset = "iris";
  std::vector<Algorithm> algorithms{Algorithm::codeq, Algorithm::pso, Algorithm::sde};
  std::size_t runs = 30;
  std::size_t budget = 10000;
  std::size_t pop_size = 20;
  std::size_t hidden = 5;
  double lb = -10.0;
  double ub = 10.0;
  double alpha = 0.05;
  std::uint64_t master_seed = 1;
  std::filesystem::path data_dir;  // empty: bundled datasets
  std::size_t threads = 1;         // 0: hardware concurrency

  // Custom CSV datasets only.
  std::vector<std::size_t> csv_targets;  // empty: last column
  bool csv_header = true;
  bool csv_classification = false;
  std::optional<std::size_t> train_rows;  // default: 85% of rows

  /// Throws config_error.
  void validate() const;
};

/// Train/test data, network shape and search box for one experiment.
struct Problem {
  std::string name;
  bool synthetic = false;
  Dataset train;
  Dataset test;
  Topology topology;
  Bounds bounds{-10.0, 10.0};
};

/// Loads, splits (once, from the master seed) and min-max scales features.
/// Throws dataset_error or config_error.
Problem prepare_problem(const ExperimentConfig& cfg);

struct RunResult {
  Algorithm algorithm = Algorithm::codeq;
  std::size_t run = 0;
  std::uint64_t seed = 0;
  double train_mse = 0.0;
  double test_mse = 0.0;
  double initial_best = 0.0;  // generation-0 best training MSE
  std::size_t evaluations = 0;
  ParameterVector best_vector;
  double wall_time = 0.0;  // seconds
};

/// seed_r = mix_seed(master_seed, r + 1).
std::uint64_t run_seed(std::uint64_t master_seed, std::size_t run);

/// Stream tag for an algorithm's fork of the run seed. Tag 0 belongs to the
/// shared initial population.
std::uint64_t algorithm_stream_tag(Algorithm a) noexcept;

/// Every (algorithm, run) cell for the configuration, ordered by algorithm
/// (in config order) then run. All algorithms of a run start from the same
/// initial population.
std::vector<RunResult> run_experiment(const ExperimentConfig& cfg);
std::vector<RunResult> run_experiment(const ExperimentConfig& cfg, const Problem& problem);

}  // namespace codeq
