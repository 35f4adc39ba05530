#pragma once

#include "codeq/core.hpp"

namespace codeq {

/// Piecewise-linear (skewed tent) chaotic map on (0, 1).
///
///   c' = c / p             if c in (0, p)
///   c' = (1 - c) / (1 - p) if c in [p, 1)
///
/// Finite precision can drive the orbit onto 0 or 1, after which it would
/// stay stuck; any such value is replaced with a fresh open-interval draw.
class ChaoticState {
 public:
  /// Throws invalid_argument unless both values lie strictly inside (0, 1).
  ChaoticState(double c, double p);

  /// c(0) and p drawn uniformly from (0, 1).
  static ChaoticState random(RngStream& rng);

  double value() const noexcept { return c_; }
  double breakpoint() const noexcept { return p_; }

  /// Advances the map once and returns the new value.
  double step(RngStream& rng);

 private:
  double c_;
  double p_;
};

/// parent + (a - b) * ln(1/u), one scalar u for all dimensions.
/// Throws invalid_u unless 0 < u < 1. The result is not clamped.
ParameterVector trial_vector(const ParameterVector& parent, const ParameterVector& a,
                             const ParameterVector& b, double u);

/// Evaluates `candidate` and swaps it in for member i on strict improvement.
/// Costs one evaluation either way. Returns whether the member was replaced.
bool greedy_replace(Population& pop, std::size_t i, ParameterVector candidate, const Objective& f);

/// Opposition branch: LB + UB - r * worst (unclamped).
ParameterVector opposition_point(const ParameterVector& worst, const Bounds& bounds, double r);

/// Chaotic branch: best + |a - b| * (2c - 1) (unclamped).
ParameterVector chaotic_point(const ParameterVector& best, const ParameterVector& a,
                              const ParameterVector& b, double c);

/// One vector per iteration: with probability 1/2 the opposition of the
/// worst member, otherwise a chaotic perturbation of the best member. Donors
/// for the chaotic branch exclude the worst index. The result is clamped.
ParameterVector opposition_quantum_vector(const Population& pop, ChaoticState& chaos,
                                          const Bounds& bounds, RngStream& rng);

/// Replaces the worst member on strict improvement. Costs one evaluation.
bool replace_worst_if_better(Population& pop, ParameterVector candidate, const Objective& f);

/// Runs CODEQ until the next evaluation would exceed the budget.
///
/// Each iteration makes one mutation-and-greedy-selection pass over the
/// population (s evaluations) and then builds one opposition/chaotic vector
/// that may replace the worst member (1 evaluation). When `initial` is
/// supplied it replaces the uniform initialization.
OptimizeResult codeq_optimize(const Objective& f, const RunOptions& options,
                              const Population* initial = nullptr);

}  // namespace codeq
