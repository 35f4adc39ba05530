#include <benchmark/benchmark.h>

#include <memory>
#include <vector>

#include "codeq/codeq.hpp"
#include "codeq/neural.hpp"
#include "codeq/rng.hpp"
#include "codeq/test_functions.hpp"
#include "codeq/wilcoxon.hpp"

namespace {

void BM_ChaoticStep(benchmark::State& state) {
  codeq::RngStream rng(1);
  codeq::ChaoticState c = codeq::ChaoticState::random(rng);
  for (auto _ : state) benchmark::DoNotOptimize(c.step(rng));
}
BENCHMARK(BM_ChaoticStep);

// IRIS-sized batch: 127 samples, 4-5-3 network.
void BM_MseFitness(benchmark::State& state) {
  codeq::RngStream rng(2);
  const codeq::Topology tp{4, 5, 3, codeq::Activation::logistic, codeq::Activation::logistic};
  auto x = std::make_shared<Eigen::MatrixXd>(127, 4);
  auto y = std::make_shared<Eigen::MatrixXd>(127, 3);
  for (double& v : x->reshaped()) v = rng.uniform();
  for (double& v : y->reshaped()) v = rng.uniform();
  const codeq::Objective f = codeq::make_mse_objective(tp, codeq::Bounds(-10, 10), x, y);
  codeq::ParameterVector p(static_cast<Eigen::Index>(codeq::param_count(tp)));
  for (double& v : p) v = rng.uniform(-10, 10);
  for (auto _ : state) benchmark::DoNotOptimize(f(p));
}
BENCHMARK(BM_MseFitness);

void BM_RankSum(benchmark::State& state) {
  codeq::RngStream rng(3);
  std::vector<double> a(static_cast<std::size_t>(state.range(0)));
  std::vector<double> b(a.size());
  for (double& v : a) v = rng.uniform();
  for (double& v : b) v = rng.uniform() + 0.1;
  for (auto _ : state) benchmark::DoNotOptimize(codeq::wilcoxon_rank_sum(a, b).p_value);
}
BENCHMARK(BM_RankSum)->Arg(7)->Arg(30);

// One CODEQ iteration costs s + 1 evaluations; time a full short run per s.
void BM_CodeqSphere(benchmark::State& state) {
  const codeq::Objective f = codeq::functions::make_sphere(5, 5.0);
  codeq::RunOptions o;
  o.pop_size = 20;
  o.budget = 21 * 100;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    o.seed = ++seed;
    benchmark::DoNotOptimize(codeq::codeq_optimize(f, o).best_fitness);
  }
}
BENCHMARK(BM_CodeqSphere);

}  // namespace

BENCHMARK_MAIN();
