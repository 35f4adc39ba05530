#include "codeq/sde.hpp"

#include <string>

namespace codeq {

ControlParams sde_adapt(const SdeIndividual& ind, const AdaptDraws& draws,
                        const SdeParams& params) {
  ControlParams out{ind.f, ind.cr};
  if (draws.f_gate < params.tau_f) out.f = params.f_lower + params.f_range * draws.f_value;
  if (draws.cr_gate < params.tau_cr) out.cr = draws.cr_value;
  return out;
}

ControlParams sde_adapt(const SdeIndividual& ind, RngStream& rng, const SdeParams& params) {
  AdaptDraws draws{};
  draws.f_gate = rng.uniform();
  draws.f_value = rng.uniform();
  draws.cr_gate = rng.uniform();
  draws.cr_value = rng.uniform();
  return sde_adapt(ind, draws, params);
}

ParameterVector sde_trial(const ParameterVector& target, const ParameterVector& base,
                          const ParameterVector& a, const ParameterVector& b,
                          const ControlParams& control, std::size_t forced_gene,
                          std::span<const double> cross_draws) {
  const auto dim = static_cast<std::size_t>(target.size());
  if (cross_draws.size() != dim || forced_gene >= dim) {
    throw Error(Errc::dimension_mismatch, "crossover draws do not match the dimension");
  }
  ParameterVector trial = target;
  for (std::size_t j = 0; j < dim; ++j) {
    if (cross_draws[j] < control.cr || j == forced_gene) {
      const auto d = static_cast<Eigen::Index>(j);
      trial[d] = base[d] + control.f * (a[d] - b[d]);
    }
  }
  return trial;
}

std::vector<SdeIndividual> sde_init(const Population& pop, const SdeParams& params) {
  if (!pop.evaluated()) throw Error(Errc::unevaluated_population, "fitness cache is not filled");
  std::vector<SdeIndividual> out;
  out.reserve(pop.size());
  for (std::size_t k = 0; k < pop.size(); ++k) {
    out.push_back({pop.members[k], pop.fitness[k], params.f_initial, params.cr_initial});
  }
  return out;
}

std::size_t sde_step(std::vector<SdeIndividual>& pop, const Objective& f, RngStream& rng,
                     std::size_t max_evaluations, const SdeParams& params) {
  const std::size_t s = pop.size();
  if (s < kMinPopulation) {
    throw Error(Errc::population_too_small,
                "DE/rand/1 needs at least " + std::to_string(kMinPopulation) + " individuals");
  }
  const std::size_t dim = f.dim();
  std::vector<double> draws(dim);

  std::vector<SdeIndividual> next = pop;
  std::size_t spent = 0;
  for (std::size_t i = 0; i < s && spent < max_evaluations; ++i) {
    const ControlParams control = sde_adapt(pop[i], rng, params);
    const auto [r1, r2, r3] = distinct_indices<3>(rng, s, i);
    const std::size_t forced = rng.below(dim);
    for (auto& u : draws) u = rng.uniform();

    ParameterVector trial = clamp(sde_trial(pop[i].vector, pop[r1].vector, pop[r2].vector,
                                            pop[r3].vector, control, forced, draws),
                                  f.bounds());
    const double ft = f(trial);
    ++spent;
    if (ft < pop[i].fitness) next[i] = {std::move(trial), ft, control.f, control.cr};
  }
  pop = std::move(next);
  return spent;
}

OptimizeResult sde_optimize(const Objective& f, const RunOptions& options,
                            const Population* initial, const SdeParams& params) {
  RngStream rng(options.seed);
  const Population start = start_population(f, options, rng, initial);
  std::vector<SdeIndividual> pop = sde_init(start, params);
  std::size_t used = start.evaluations_used;

  auto best_of = [&pop] {
    std::size_t best = 0;
    for (std::size_t k = 1; k < pop.size(); ++k) {
      if (pop[k].fitness < pop[best].fitness) best = k;
    }
    return best;
  };

  OptimizeResult result;
  result.initial_best_fitness = pop[best_of()].fitness;
  while (used < options.budget) {
    used += sde_step(pop, f, rng, options.budget - used, params);
    result.history.push_back(pop[best_of()].fitness);
  }
  const std::size_t best = best_of();
  result.best = pop[best].vector;
  result.best_fitness = pop[best].fitness;
  result.evaluations = used;
  return result;
}

}  // namespace codeq
