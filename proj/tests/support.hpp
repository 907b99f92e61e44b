#pragma once

// Hand-rolled value generators for property tests. Every property draws from
// a fixed-seed std::mt19937_64 so failures reproduce.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace wchaos::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : eng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
  /// Log-uniform magnitude in [lo, hi] with a random sign.
  double signed_log(double lo, double hi) {
    const double m = std::exp(uniform(std::log(lo), std::log(hi)));
    return integer(0, 1) ? m : -m;
  }
  std::vector<double> vector(std::size_t n, double lo, double hi) {
    std::vector<double> v(n);
    for (double& x : v) x = uniform(lo, hi);
    return v;
  }
  /// Strictly positive weights normalized to a probability vector.
  std::vector<double> simplex(std::size_t n) {
    std::vector<double> v = vector(n, 1e-3, 1.0);
    double total = 0.0;
    for (double x : v) total += x;
    for (double& x : v) x /= total;
    return v;
  }
  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

/// Relative difference with an absolute floor.
inline double rel_diff(double a, double b, double floor = 1e-300) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), floor});
}

}  // namespace wchaos::testing
