#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Core>

#include "codeq/error.hpp"
#include "codeq/rng.hpp"

namespace codeq {

/// A point in the search space; for network training, a full set of
/// weights and biases.
using ParameterVector = Eigen::VectorXd;

/// Scalar box constraint applied uniformly to every dimension.
class Bounds {
 public:
  Bounds(double lower, double upper);

  double lower() const noexcept { return lower_; }
  double upper() const noexcept { return upper_; }
  double width() const noexcept { return upper_ - lower_; }
  bool contains(double x) const noexcept { return x >= lower_ && x <= upper_; }

 private:
  double lower_;
  double upper_;
};

/// Black-box objective, lower is better. A NaN result is reported as +inf.
class Objective {
 public:
  using Function = std::function<double(const ParameterVector&)>;

  Objective(std::size_t dim, Bounds bounds, Function fn);

  std::size_t dim() const noexcept { return dim_; }
  const Bounds& bounds() const noexcept { return bounds_; }

  double operator()(const ParameterVector& x) const;

 private:
  std::size_t dim_;
  Bounds bounds_;
  Function fn_;
};

/// s candidate vectors plus their cached fitness. `fitness` is empty until
/// evaluate() fills it.
struct Population {
  std::vector<ParameterVector> members;
  std::vector<double> fitness;
  std::size_t evaluations_used = 0;

  std::size_t size() const noexcept { return members.size(); }
  std::size_t dim() const noexcept { return members.empty() ? 0 : members.front().size(); }
  bool evaluated() const noexcept { return !members.empty() && fitness.size() == members.size(); }
};

inline constexpr std::size_t kMinPopulation = 4;

Population uniform_init(const Bounds& bounds, std::size_t size, std::size_t dim, RngStream& rng);

/// Fills the fitness cache; every member costs one evaluation.
void evaluate(Population& pop, const Objective& f);

struct Extremes {
  std::size_t best = 0;
  std::size_t worst = 0;
};

/// Ties resolve to the lowest index for both ends.
Extremes best_worst_indices(const Population& pop);

ParameterVector clamp(const ParameterVector& v, const Bounds& bounds);

/// K distinct indices in [0, n), all different from `exclude`, drawn by
/// rejection. Requires n > K.
template <std::size_t K>
std::array<std::size_t, K> distinct_indices(RngStream& rng, std::size_t n, std::size_t exclude) {
  static_assert(K > 0);
  if (n <= K) {
    throw Error(Errc::population_too_small, "need more than " + std::to_string(K) + " members");
  }
  std::array<std::size_t, K> out{};
  for (std::size_t k = 0; k < K; ++k) {
    for (;;) {
      const std::size_t idx = rng.below(n);
      bool clash = idx == exclude;
      for (std::size_t j = 0; j < k && !clash; ++j) clash = out[j] == idx;
      if (!clash) {
        out[k] = idx;
        break;
      }
    }
  }
  return out;
}

/// Settings shared by every optimizer in the library.
struct RunOptions {
  std::size_t pop_size = 20;
  std::size_t budget = 10000;  // objective evaluations
  std::uint64_t seed = 0;
};

struct OptimizeResult {
  ParameterVector best;
  double best_fitness = 0.0;
  double initial_best_fitness = 0.0;  // best of the evaluated generation 0
  std::vector<double> history;        // best fitness after each iteration
  std::size_t evaluations = 0;
};

/// Validates options and produces the evaluated generation 0: either a copy
/// of `initial` or a fresh uniform population drawn from `rng`.
Population start_population(const Objective& f, const RunOptions& options, RngStream& rng,
                            const Population* initial);

}  // namespace codeq
