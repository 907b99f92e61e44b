#pragma once

#include <cstdint>

namespace wchaos {

/// Counter-based generator: draw k of stream `seed` is
/// splitmix64(seed + (k + 1) * 0x9E3779B97F4A7C15). Any draw can be
/// reproduced from (seed, k) alone, independent of call order elsewhere.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) noexcept : seed_(seed) {}

  std::uint64_t at(std::uint64_t counter) const noexcept;
  std::uint64_t next() noexcept { return at(counter_++); }
  /// Uniform double in [0, 1) from the top 53 bits.
  double uniform() noexcept;
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

std::uint64_t splitmix64(std::uint64_t z) noexcept;

/// Additive-recurrence (golden ratio) low-discrepancy point k in [0, 1),
/// shifted by `offset`.
double golden_sequence(std::uint64_t k, double offset) noexcept;

}  // namespace wchaos
