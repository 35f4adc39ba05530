#include "codeq/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace codeq {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_bounds: return "invalid-bounds";
    case Errc::invalid_size: return "invalid-size";
    case Errc::dimension_mismatch: return "dimension-mismatch";
    case Errc::unevaluated_population: return "unevaluated-population";
    case Errc::invalid_u: return "invalid-u";
    case Errc::index_out_of_range: return "index-out-of-range";
    case Errc::invalid_budget: return "invalid-budget";
    case Errc::population_too_small: return "population-too-small";
    case Errc::length_mismatch: return "length-mismatch";
    case Errc::empty_dataset: return "empty-dataset";
    case Errc::io_error: return "io-error";
    case Errc::parse_error: return "parse-error";
    case Errc::schema_mismatch: return "schema-mismatch";
    case Errc::invalid_count: return "invalid-count";
    case Errc::label_out_of_range: return "label-out-of-range";
    case Errc::dataset_error: return "dataset-error";
    case Errc::config_error: return "config-error";
    case Errc::empty_sample: return "empty-sample";
    case Errc::insufficient_runs: return "insufficient-runs";
    case Errc::invalid_argument: return "invalid-argument";
  }
  return "unknown";
}

Bounds::Bounds(double lower, double upper) : lower_(lower), upper_(upper) {
  if (!(lower < upper) || !std::isfinite(lower) || !std::isfinite(upper)) {
    throw Error(Errc::invalid_bounds,
                "lower bound " + std::to_string(lower) + " must be below upper bound " +
                    std::to_string(upper));
  }
}

Objective::Objective(std::size_t dim, Bounds bounds, Function fn)
    : dim_(dim), bounds_(bounds), fn_(std::move(fn)) {
  if (dim_ == 0) throw Error(Errc::invalid_size, "objective dimension must be positive");
  if (!fn_) throw Error(Errc::invalid_argument, "objective function is empty");
}

double Objective::operator()(const ParameterVector& x) const {
  if (static_cast<std::size_t>(x.size()) != dim_) {
    throw Error(Errc::dimension_mismatch, "vector has " + std::to_string(x.size()) +
                                              " components, objective expects " +
                                              std::to_string(dim_));
  }
  const double value = fn_(x);
  return std::isnan(value) ? std::numeric_limits<double>::infinity() : value;
}

Population uniform_init(const Bounds& bounds, std::size_t size, std::size_t dim, RngStream& rng) {
  if (size < kMinPopulation) {
    throw Error(Errc::invalid_size, "population needs at least " +
                                        std::to_string(kMinPopulation) + " members");
  }
  if (dim == 0) throw Error(Errc::invalid_size, "dimension must be positive");

  Population pop;
  pop.members.reserve(size);
  for (std::size_t k = 0; k < size; ++k) {
    ParameterVector v(static_cast<Eigen::Index>(dim));
    for (Eigen::Index d = 0; d < v.size(); ++d) v[d] = rng.uniform(bounds.lower(), bounds.upper());
    pop.members.push_back(std::move(v));
  }
  return pop;
}

void evaluate(Population& pop, const Objective& f) {
  for (const auto& m : pop.members) {
    if (static_cast<std::size_t>(m.size()) != f.dim()) {
      throw Error(Errc::dimension_mismatch, "member dimension does not match objective");
    }
  }
  pop.fitness.resize(pop.members.size());
  for (std::size_t k = 0; k < pop.members.size(); ++k) pop.fitness[k] = f(pop.members[k]);
  pop.evaluations_used += pop.members.size();
}

Extremes best_worst_indices(const Population& pop) {
  if (!pop.evaluated()) {
    throw Error(Errc::unevaluated_population, "fitness cache is not filled");
  }
  Extremes e;
  for (std::size_t k = 1; k < pop.fitness.size(); ++k) {
    if (pop.fitness[k] < pop.fitness[e.best]) e.best = k;
    if (pop.fitness[k] > pop.fitness[e.worst]) e.worst = k;
  }
  return e;
}

ParameterVector clamp(const ParameterVector& v, const Bounds& bounds) {
  return v.cwiseMax(bounds.lower()).cwiseMin(bounds.upper());
}

Population start_population(const Objective& f, const RunOptions& options, RngStream& rng,
                            const Population* initial) {
  if (options.pop_size < kMinPopulation) {
    throw Error(Errc::invalid_size, "population needs at least " +
                                        std::to_string(kMinPopulation) + " members");
  }
  if (options.budget < options.pop_size) {
    throw Error(Errc::invalid_budget, "budget " + std::to_string(options.budget) +
                                          " cannot cover the initial population of " +
                                          std::to_string(options.pop_size));
  }

  Population pop;
  if (initial != nullptr) {
    if (initial->size() != options.pop_size) {
      throw Error(Errc::invalid_size, "initial population size differs from pop_size");
    }
    pop.members = initial->members;
  } else {
    pop = uniform_init(f.bounds(), options.pop_size, f.dim(), rng);
  }
  evaluate(pop, f);
  return pop;
}

}  // namespace codeq
