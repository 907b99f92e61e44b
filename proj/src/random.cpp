#include "wchaos/random.hpp"

#include <cmath>

namespace wchaos {

std::uint64_t splitmix64(std::uint64_t z) noexcept {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

std::uint64_t CounterRng::at(std::uint64_t counter) const noexcept {
  return splitmix64(seed_ + (counter + 1) * 0x9E3779B97F4A7C15ULL);
}

double CounterRng::uniform() noexcept {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double golden_sequence(std::uint64_t k, double offset) noexcept {
  constexpr double kInvPhi = 0.6180339887498948482;
  const double v = offset + static_cast<double>(k) * kInvPhi;
  return v - std::floor(v);
}

}  // namespace wchaos
