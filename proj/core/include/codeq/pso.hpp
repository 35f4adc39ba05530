#pragma once

#include <vector>

#include "codeq/core.hpp"

namespace codeq {

// Inertia-weight gbest PSO with the constriction-equivalent coefficients.
struct PsoParams {
  double inertia = 0.7298;
  double cognitive = 1.49618;
  double social = 1.49618;
};

struct PsoState {
  std::vector<ParameterVector> positions;
  std::vector<ParameterVector> velocities;
  std::vector<ParameterVector> personal_best;
  std::vector<double> personal_best_fitness;
  ParameterVector global_best;
  double global_best_fitness = 0.0;
  PsoParams params;
  double vmax = 0.0;
  std::size_t evaluations_used = 0;

  std::size_t size() const noexcept { return positions.size(); }
};

/// Swarm at rest on an evaluated population; vmax = (ub - lb) / 2.
PsoState pso_init(const Population& pop, const Bounds& bounds, const PsoParams& params = {});

/// Velocity update for particle i with explicit per-component draws,
/// clamped to +/- vmax.
ParameterVector pso_velocity(const PsoState& state, std::size_t i, const Eigen::VectorXd& r1,
                             const Eigen::VectorXd& r2);

/// Moves and evaluates particles in order until all have moved or
/// `max_evaluations` is reached. Returns the number of evaluations spent.
std::size_t pso_step(PsoState& state, const Objective& f, RngStream& rng,
                     std::size_t max_evaluations);

OptimizeResult pso_optimize(const Objective& f, const RunOptions& options,
                            const Population* initial = nullptr, const PsoParams& params = {});

}  // namespace codeq
