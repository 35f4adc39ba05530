#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace codeq {

/// SplitMix64 finalizer over (seed, tag). Used for every derived seed in the
/// library so run and algorithm streams are pure functions of their parents.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag) noexcept;

/// Seeded random stream with a platform-independent draw sequence.
///
/// std::mt19937_64 is fully specified by the standard; the distributions in
/// <random> are not, so the conversions to reals and bounded integers are
/// done here by hand.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1) with 53 bits of resolution.
  double uniform();

  /// Uniform strictly inside (0, 1).
  double open_uniform();

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n); n must be positive.
  std::size_t below(std::size_t n);

  /// Standard normal draw (Box-Muller, one value per call).
  double normal();

  /// Independent child stream; does not advance this stream.
  RngStream fork(std::uint64_t tag) const { return RngStream(mix_seed(seed_, tag)); }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace codeq
