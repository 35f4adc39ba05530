#include "codeq/pso.hpp"

namespace codeq {

PsoState pso_init(const Population& pop, const Bounds& bounds, const PsoParams& params) {
  if (!pop.evaluated()) throw Error(Errc::unevaluated_population, "fitness cache is not filled");

  PsoState state;
  state.positions = pop.members;
  state.personal_best = pop.members;
  state.personal_best_fitness = pop.fitness;
  state.velocities.assign(pop.size(), ParameterVector::Zero(static_cast<Eigen::Index>(pop.dim())));
  const std::size_t best = best_worst_indices(pop).best;
  state.global_best = pop.members[best];
  state.global_best_fitness = pop.fitness[best];
  state.params = params;
  state.vmax = bounds.width() / 2.0;
  state.evaluations_used = pop.evaluations_used;
  return state;
}

ParameterVector pso_velocity(const PsoState& state, std::size_t i, const Eigen::VectorXd& r1,
                             const Eigen::VectorXd& r2) {
  const ParameterVector& x = state.positions[i];
  const auto& p = state.params;
  ParameterVector v = p.inertia * state.velocities[i] +
                      p.cognitive * r1.cwiseProduct(state.personal_best[i] - x) +
                      p.social * r2.cwiseProduct(state.global_best - x);
  return v.cwiseMax(-state.vmax).cwiseMin(state.vmax);
}

std::size_t pso_step(PsoState& state, const Objective& f, RngStream& rng,
                     std::size_t max_evaluations) {
  const Eigen::Index dim = static_cast<Eigen::Index>(f.dim());
  Eigen::VectorXd r1(dim);
  Eigen::VectorXd r2(dim);
  std::size_t spent = 0;
  for (std::size_t i = 0; i < state.size() && spent < max_evaluations; ++i) {
    for (Eigen::Index d = 0; d < dim; ++d) {
      r1[d] = rng.uniform();
      r2[d] = rng.uniform();
    }
    state.velocities[i] = pso_velocity(state, i, r1, r2);
    state.positions[i] = clamp(state.positions[i] + state.velocities[i], f.bounds());

    const double fx = f(state.positions[i]);
    ++spent;
    if (fx < state.personal_best_fitness[i]) {
      state.personal_best[i] = state.positions[i];
      state.personal_best_fitness[i] = fx;
      if (fx < state.global_best_fitness) {
        state.global_best = state.positions[i];
        state.global_best_fitness = fx;
      }
    }
  }
  state.evaluations_used += spent;
  return spent;
}

OptimizeResult pso_optimize(const Objective& f, const RunOptions& options,
                            const Population* initial, const PsoParams& params) {
  RngStream rng(options.seed);
  const Population pop = start_population(f, options, rng, initial);
  PsoState state = pso_init(pop, f.bounds(), params);

  OptimizeResult result;
  result.initial_best_fitness = state.global_best_fitness;
  while (state.evaluations_used < options.budget) {
    pso_step(state, f, rng, options.budget - state.evaluations_used);
    result.history.push_back(state.global_best_fitness);
  }
  result.best = state.global_best;
  result.best_fitness = state.global_best_fitness;
  result.evaluations = state.evaluations_used;
  return result;
}

}  // namespace codeq
