#include "codeq/codeq.hpp"

#include <cmath>
#include <string>

namespace codeq {
namespace {

bool in_open_unit(double x) { return x > 0.0 && x < 1.0; }

}  // namespace

ChaoticState::ChaoticState(double c, double p) : c_(c), p_(p) {
  if (!in_open_unit(c) || !in_open_unit(p)) {
    throw Error(Errc::invalid_argument, "chaotic state must lie in (0, 1)");
  }
}

ChaoticState ChaoticState::random(RngStream& rng) {
  const double c = rng.open_uniform();
  const double p = rng.open_uniform();
  return ChaoticState(c, p);
}

double ChaoticState::step(RngStream& rng) {
  const double next = c_ < p_ ? c_ / p_ : (1.0 - c_) / (1.0 - p_);
  c_ = in_open_unit(next) ? next : rng.open_uniform();
  return c_;
}

ParameterVector trial_vector(const ParameterVector& parent, const ParameterVector& a,
                             const ParameterVector& b, double u) {
  if (!in_open_unit(u)) {
    throw Error(Errc::invalid_u, "u = " + std::to_string(u) + " is outside (0, 1)");
  }
  if (a.size() != parent.size() || b.size() != parent.size()) {
    throw Error(Errc::dimension_mismatch, "donor and parent dimensions differ");
  }
  return parent + (a - b) * std::log(1.0 / u);
}

bool greedy_replace(Population& pop, std::size_t i, ParameterVector candidate,
                    const Objective& f) {
  if (i >= pop.size()) {
    throw Error(Errc::index_out_of_range, "member index " + std::to_string(i));
  }
  if (!pop.evaluated()) throw Error(Errc::unevaluated_population, "fitness cache is not filled");

  const double fc = f(candidate);
  ++pop.evaluations_used;
  if (fc < pop.fitness[i]) {
    pop.members[i] = std::move(candidate);
    pop.fitness[i] = fc;
    return true;
  }
  return false;
}

ParameterVector opposition_point(const ParameterVector& worst, const Bounds& bounds, double r) {
  return ((bounds.lower() + bounds.upper()) - (r * worst).array()).matrix();
}

ParameterVector chaotic_point(const ParameterVector& best, const ParameterVector& a,
                              const ParameterVector& b, double c) {
  return best + (a - b).cwiseAbs() * (2.0 * c - 1.0);
}

ParameterVector opposition_quantum_vector(const Population& pop, ChaoticState& chaos,
                                          const Bounds& bounds, RngStream& rng) {
  const Extremes ext = best_worst_indices(pop);
  if (rng.uniform() <= 0.5) {
    const double r = rng.uniform();
    return clamp(opposition_point(pop.members[ext.worst], bounds, r), bounds);
  }
  const auto [i1, i2] = distinct_indices<2>(rng, pop.size(), ext.worst);
  const double c = chaos.step(rng);
  return clamp(chaotic_point(pop.members[ext.best], pop.members[i1], pop.members[i2], c), bounds);
}

bool replace_worst_if_better(Population& pop, ParameterVector candidate, const Objective& f) {
  const Extremes ext = best_worst_indices(pop);
  return greedy_replace(pop, ext.worst, std::move(candidate), f);
}

OptimizeResult codeq_optimize(const Objective& f, const RunOptions& options,
                              const Population* initial) {
  RngStream rng(options.seed);
  Population pop = start_population(f, options, rng, initial);
  const Bounds& bounds = f.bounds();
  ChaoticState chaos = ChaoticState::random(rng);

  OptimizeResult result;
  result.initial_best_fitness = pop.fitness[best_worst_indices(pop).best];

  const std::size_t s = pop.size();
  while (pop.evaluations_used < options.budget) {
    for (std::size_t i = 0; i < s && pop.evaluations_used < options.budget; ++i) {
      const auto [i1, i2] = distinct_indices<2>(rng, s, i);
      const double u = rng.open_uniform();
      ParameterVector v =
          clamp(trial_vector(pop.members[i], pop.members[i1], pop.members[i2], u), bounds);
      greedy_replace(pop, i, std::move(v), f);
    }
    if (pop.evaluations_used < options.budget) {
      replace_worst_if_better(pop, opposition_quantum_vector(pop, chaos, bounds, rng), f);
    }
    result.history.push_back(pop.fitness[best_worst_indices(pop).best]);
  }

  const std::size_t best = best_worst_indices(pop).best;
  result.best = pop.members[best];
  result.best_fitness = pop.fitness[best];
  result.evaluations = pop.evaluations_used;
  return result;
}

}  // namespace codeq
