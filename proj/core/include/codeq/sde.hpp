#pragma once

#include <span>
#include <utility>
#include <vector>

#include "codeq/core.hpp"

namespace codeq {

/// Self-adaptive DE (jDE) constants. F is regenerated in
/// [f_lower, f_lower + f_range], CR in [0, 1].
struct SdeParams {
  double tau_f = 0.1;
  double tau_cr = 0.1;
  double f_lower = 0.1;
  double f_range = 0.9;
  double f_initial = 0.5;
  double cr_initial = 0.9;
};

struct SdeIndividual {
  ParameterVector vector;
  double fitness = 0.0;
  double f = 0.5;
  double cr = 0.9;
};

struct ControlParams {
  double f;
  double cr;
};

/// The four uniform draws consumed by one adaptation.
struct AdaptDraws {
  double f_gate;
  double f_value;
  double cr_gate;
  double cr_value;
};

ControlParams sde_adapt(const SdeIndividual& ind, const AdaptDraws& draws,
                        const SdeParams& params = {});
ControlParams sde_adapt(const SdeIndividual& ind, RngStream& rng, const SdeParams& params = {});

/// DE/rand/1/bin trial: base + F * (a - b), binomially crossed with target.
/// Gene j comes from the mutant when cross_draws[j] < CR or j == forced_gene.
/// The result is not clamped.
ParameterVector sde_trial(const ParameterVector& target, const ParameterVector& base,
                          const ParameterVector& a, const ParameterVector& b,
                          const ControlParams& control, std::size_t forced_gene,
                          std::span<const double> cross_draws);

std::vector<SdeIndividual> sde_init(const Population& pop, const SdeParams& params = {});

/// One generation. Trials are built from the generation's starting
/// population and replace their target on strict improvement, carrying the
/// adapted (F, CR) with them. Stops early once `max_evaluations` trials have
/// been evaluated; returns the number spent.
std::size_t sde_step(std::vector<SdeIndividual>& pop, const Objective& f, RngStream& rng,
                     std::size_t max_evaluations, const SdeParams& params = {});

OptimizeResult sde_optimize(const Objective& f, const RunOptions& options,
                            const Population* initial = nullptr, const SdeParams& params = {});

}  // namespace codeq
