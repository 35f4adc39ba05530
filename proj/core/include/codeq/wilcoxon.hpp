#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace codeq {

/// Pooled sizes up to this use the exact null distribution.
inline constexpr std::size_t kExactPooledLimit = 14;

struct RankSumResult {
  double statistic = 0.0;  // rank sum of the first sample
  double p_value = 1.0;    // two-sided
  bool significant = false;
  bool exact = false;
};

/// Ranks 1..N with tied values sharing their mean rank.
std::vector<double> midranks(std::span<const double> values);

/// Two-sided Wilcoxon rank-sum test, significant when p < alpha.
///
/// The p-value is P(|W - E[W]| >= |w - E[W]|) under the permutation null.
/// It is computed exactly when |a| + |b| <= kExactPooledLimit and otherwise
/// from the normal approximation with tie-corrected variance and continuity
/// correction. Throws empty_sample unless both samples have >= 2 values.
RankSumResult wilcoxon_rank_sum(std::span<const double> a, std::span<const double> b,
                                double alpha = 0.05);

/// Exact permutation p-value (any sizes; cost grows with N^2 * sum of ranks).
double rank_sum_exact_p(std::span<const double> a, std::span<const double> b);

/// Normal-approximation p-value.
double rank_sum_normal_p(std::span<const double> a, std::span<const double> b);

}  // namespace codeq
