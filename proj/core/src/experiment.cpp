#include "codeq/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <cmath>
#include <exception>
#include <memory>
#include <mutex>
#include <thread>

#include "codeq/codeq.hpp"
#include "codeq/pso.hpp"
#include "codeq/sde.hpp"

namespace codeq {
namespace {

constexpr std::uint64_t kSplitTag = 0;
constexpr std::uint64_t kInitialPopulationTag = 0;
constexpr std::uint64_t kOilProxySeed = 1980;
constexpr std::size_t kIrisTrainRows = 127;
constexpr std::size_t kHouseTrainRows = 430;

OptimizeResult optimize(Algorithm a, const Objective& f, const RunOptions& options,
                        const Population& initial) {
  switch (a) {
    case Algorithm::codeq: return codeq_optimize(f, options, &initial);
    case Algorithm::pso: return pso_optimize(f, options, &initial);
    case Algorithm::sde: return sde_optimize(f, options, &initial);
  }
  throw Error(Errc::config_error, "unknown algorithm");
}

Dataset load_named(const ExperimentConfig& cfg, std::size_t& n_train) {
  const std::filesystem::path dir = cfg.data_dir.empty() ? default_datasets_dir() : cfg.data_dir;
  if (cfg.dataset == "iris") {
    n_train = kIrisTrainRows;
    return load_iris(dir);
  }
  if (cfg.dataset == "house") {
    n_train = kHouseTrainRows;
    return load_boston_housing(dir);
  }
  if (cfg.dataset == "oil-proxy") {
    n_train = kOilProxyTrainRows;
    return synthetic_oil_proxy(kOilProxyRows, kOilProxySeed);
  }

  const std::filesystem::path path(cfg.dataset);
  std::ifstream probe(path);
  if (!probe) throw Error(Errc::dataset_error, "unknown dataset or unreadable file: " + cfg.dataset);
  std::string first;
  std::getline(probe, first);
  std::size_t cols = 1 + static_cast<std::size_t>(std::count(first.begin(), first.end(), ','));

  CsvSchema schema;
  schema.has_header = cfg.csv_header;
  schema.task = cfg.csv_classification ? Task::classification : Task::regression;
  schema.target_columns = cfg.csv_targets.empty() ? std::vector<std::size_t>{cols - 1} : cfg.csv_targets;
  for (std::size_t c = 0; c < cols; ++c) {
    if (std::find(schema.target_columns.begin(), schema.target_columns.end(), c) ==
        schema.target_columns.end()) {
      schema.feature_columns.push_back(c);
    }
  }
  Dataset d = load_csv(path, schema, path.stem().string());
  n_train = cfg.train_rows.value_or(static_cast<std::size_t>(std::lround(0.85 * static_cast<double>(d.rows()))));
  return d;
}

}  // namespace

std::string_view to_string(Algorithm a) noexcept {
  switch (a) {
    case Algorithm::codeq: return "codeq";
    case Algorithm::pso: return "pso";
    case Algorithm::sde: return "sde";
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
  if (name == "codeq") return Algorithm::codeq;
  if (name == "pso") return Algorithm::pso;
  if (name == "sde") return Algorithm::sde;
  throw Error(Errc::config_error, "unknown algorithm '" + std::string(name) + "'");
}

void ExperimentConfig::validate() const {
  if (algorithms.empty()) throw Error(Errc::config_error, "no algorithms selected");
  for (std::size_t i = 0; i < algorithms.size(); ++i) {
    for (std::size_t j = i + 1; j < algorithms.size(); ++j) {
      if (algorithms[i] == algorithms[j]) throw Error(Errc::config_error, "algorithm listed twice");
    }
  }
  if (runs < 2) throw Error(Errc::config_error, "runs must be at least 2");
  if (pop_size < kMinPopulation) throw Error(Errc::config_error, "population must be at least 4");
  if (budget < pop_size) throw Error(Errc::config_error, "budget must cover the initial population");
  if (hidden == 0) throw Error(Errc::config_error, "hidden layer needs at least one neuron");
  if (!(lb < ub)) throw Error(Errc::config_error, "lower bound must be below upper bound");
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error(Errc::config_error, "alpha must lie in (0, 1)");
}

Problem prepare_problem(const ExperimentConfig& cfg) {
  cfg.validate();
  std::size_t n_train = 0;
  Dataset raw;
  try {
    raw = load_named(cfg, n_train);
  } catch (const Error& e) {
    if (e.code() == Errc::dataset_error) throw;
    throw Error(Errc::dataset_error, e.what());
  }
  if (n_train == 0 || n_train >= raw.rows()) {
    throw Error(Errc::config_error, "training rows must leave a non-empty test set");
  }

  const Split split = holdout_split(raw.rows(), n_train, mix_seed(cfg.master_seed, kSplitTag));
  const Dataset scaled = minmax_normalize(raw, split).first;

  Problem p;
  p.name = raw.name;
  p.synthetic = raw.synthetic;
  p.train = subset(scaled, split.train);
  p.test = subset(scaled, split.test);
  p.topology.inputs = static_cast<std::size_t>(raw.features.cols());
  p.topology.hidden = cfg.hidden;
  p.topology.outputs = static_cast<std::size_t>(raw.targets.cols());
  p.topology.hidden_activation = Activation::logistic;
  p.topology.output_activation =
      raw.task == Task::classification ? Activation::logistic : Activation::linear;
  p.bounds = Bounds(cfg.lb, cfg.ub);
  return p;
}

std::uint64_t run_seed(std::uint64_t master_seed, std::size_t run) {
  return mix_seed(master_seed, static_cast<std::uint64_t>(run) + 1);
}

std::uint64_t algorithm_stream_tag(Algorithm a) noexcept {
  switch (a) {
    case Algorithm::codeq: return 1;
    case Algorithm::pso: return 2;
    case Algorithm::sde: return 3;
  }
  return 99;
}

std::vector<RunResult> run_experiment(const ExperimentConfig& cfg) {
  return run_experiment(cfg, prepare_problem(cfg));
}

std::vector<RunResult> run_experiment(const ExperimentConfig& cfg, const Problem& problem) {
  cfg.validate();
  const Objective objective = make_mse_objective(
      problem.topology, problem.bounds,
      std::make_shared<const Eigen::MatrixXd>(problem.train.features),
      std::make_shared<const Eigen::MatrixXd>(problem.train.targets));

  std::vector<Population> initial;
  initial.reserve(cfg.runs);
  for (std::size_t r = 0; r < cfg.runs; ++r) {
    RngStream rng = RngStream(run_seed(cfg.master_seed, r)).fork(kInitialPopulationTag);
    initial.push_back(uniform_init(problem.bounds, cfg.pop_size, objective.dim(), rng));
  }

  const std::size_t cells = cfg.algorithms.size() * cfg.runs;
  std::vector<RunResult> results(cells);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto run_cell = [&](std::size_t cell) {
    const Algorithm alg = cfg.algorithms[cell / cfg.runs];
    const std::size_t run = cell % cfg.runs;
    const std::uint64_t seed = run_seed(cfg.master_seed, run);

    RunOptions options;
    options.pop_size = cfg.pop_size;
    options.budget = cfg.budget;
    options.seed = mix_seed(seed, algorithm_stream_tag(alg));

    const auto start = std::chrono::steady_clock::now();
    OptimizeResult best = optimize(alg, objective, options, initial[run]);
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

    RunResult& out = results[cell];
    out.algorithm = alg;
    out.run = run;
    out.seed = seed;
    out.train_mse = best.best_fitness;
    out.test_mse = mse_fitness(best.best, problem.topology, problem.test.features,
                               problem.test.targets);
    out.initial_best = best.initial_best_fitness;
    out.evaluations = best.evaluations;
    out.best_vector = std::move(best.best);
    out.wall_time = elapsed.count();
  };

  auto worker = [&] {
    for (std::size_t cell = next++; cell < cells; cell = next++) {
      try {
        run_cell(cell);
      } catch (...) {
        const std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = cells;
      }
    }
  };

  std::size_t threads = cfg.threads == 0 ? std::thread::hardware_concurrency() : cfg.threads;
  threads = std::clamp<std::size_t>(threads, 1, cells);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

}  // namespace codeq
