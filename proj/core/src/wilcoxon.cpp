#include "codeq/wilcoxon.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <numeric>

#include "codeq/error.hpp"

namespace codeq {
namespace {

void check_samples(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) {
    throw Error(Errc::empty_sample, "rank-sum test needs at least two values per sample");
  }
}

std::vector<double> pooled(std::span<const double> a, std::span<const double> b) {
  std::vector<double> all(a.begin(), a.end());
  all.insert(all.end(), b.begin(), b.end());
  return all;
}

// Sum over tie groups of (t^3 - t).
double tie_term(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  double term = 0.0;
  for (std::size_t i = 0; i < values.size();) {
    std::size_t j = i;
    while (j < values.size() && values[j] == values[i]) ++j;
    const double t = static_cast<double>(j - i);
    term += t * t * t - t;
    i = j;
  }
  return term;
}

}  // namespace

std::vector<double> midranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t l, std::size_t r) { return values[l] < values[r]; });
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && values[order[j]] == values[order[i]]) ++j;
    // Positions i..j-1 hold ranks i+1..j.
    const double rank = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = rank;
    i = j;
  }
  return ranks;
}

double rank_sum_exact_p(std::span<const double> a, std::span<const double> b) {
  check_samples(a, b);
  const std::vector<double> ranks = midranks(pooled(a, b));
  const std::size_t n = a.size();
  const std::size_t total = ranks.size();

  // Mid-ranks are multiples of 1/2, so doubled ranks are exact integers.
  std::vector<std::int64_t> doubled(total);
  for (std::size_t k = 0; k < total; ++k) doubled[k] = std::llround(2.0 * ranks[k]);
  const std::int64_t max_sum = std::accumulate(doubled.begin(), doubled.end(), std::int64_t{0});

  // ways[k][s]: number of k-subsets of the items seen so far with doubled sum s.
  std::vector<std::vector<std::uint64_t>> ways(
      n + 1, std::vector<std::uint64_t>(static_cast<std::size_t>(max_sum) + 1, 0));
  ways[0][0] = 1;
  for (std::size_t item = 0; item < total; ++item) {
    const auto r = static_cast<std::size_t>(doubled[item]);
    for (std::size_t k = std::min(n, item + 1); k >= 1; --k) {
      for (std::size_t s = static_cast<std::size_t>(max_sum); s >= r; --s) {
        ways[k][s] += ways[k - 1][s - r];
      }
    }
  }

  std::int64_t observed = 0;
  for (std::size_t k = 0; k < n; ++k) observed += doubled[k];
  const auto centre = static_cast<std::int64_t>(n) * static_cast<std::int64_t>(total + 1);
  const std::int64_t distance = std::llabs(observed - centre);

  std::uint64_t extreme = 0;
  std::uint64_t all = 0;
  for (std::int64_t s = 0; s <= max_sum; ++s) {
    const std::uint64_t w = ways[n][static_cast<std::size_t>(s)];
    all += w;
    if (std::llabs(s - centre) >= distance) extreme += w;
  }
  return static_cast<double>(extreme) / static_cast<double>(all);
}

double rank_sum_normal_p(std::span<const double> a, std::span<const double> b) {
  check_samples(a, b);
  const std::vector<double> all = pooled(a, b);
  const std::vector<double> ranks = midranks(all);
  const double n = static_cast<double>(a.size());
  const double m = static_cast<double>(b.size());
  const double total = n + m;

  double w = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) w += ranks[k];
  const double mean = n * (total + 1.0) / 2.0;
  const double variance =
      n * m / 12.0 * ((total + 1.0) - tie_term(all) / (total * (total - 1.0)));
  if (variance <= 0.0) return 1.0;

  const double z = std::max(0.0, std::abs(w - mean) - 0.5) / std::sqrt(variance);
  return std::min(1.0, std::erfc(z / std::sqrt(2.0)));
}

RankSumResult wilcoxon_rank_sum(std::span<const double> a, std::span<const double> b,
                                double alpha) {
  check_samples(a, b);
  RankSumResult result;
  const std::vector<double> ranks = midranks(pooled(a, b));
  result.statistic = std::accumulate(ranks.begin(), ranks.begin() + static_cast<std::ptrdiff_t>(a.size()), 0.0);
  result.exact = a.size() + b.size() <= kExactPooledLimit;
  result.p_value = result.exact ? rank_sum_exact_p(a, b) : rank_sum_normal_p(a, b);
  result.significant = result.p_value < alpha;
  return result;
}

}  // namespace codeq
