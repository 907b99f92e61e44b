#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace wchaos {

/// Sampled perturbation growth (t_i, delta_i). Separations are stored as
/// ln(delta) so growth far beyond the double range (tangent products over
/// 10^6 steps, double exponentials) stays representable.
class SeparationSeries {
 public:
  /// Throws std::invalid_argument unless sizes match, times strictly
  /// increase, and every delta is positive and finite.
  static SeparationSeries from_deltas(std::vector<double> times, std::span<const double> deltas);
  static SeparationSeries from_log_deltas(std::vector<double> times,
                                          std::vector<double> log_deltas);

  std::size_t size() const noexcept { return times_.size(); }
  std::span<const double> times() const noexcept { return times_; }
  std::span<const double> log_deltas() const noexcept { return log_deltas_; }
  double time(std::size_t i) const { return times_.at(i); }
  double log_delta(std::size_t i) const { return log_deltas_.at(i); }
  double delta(std::size_t i) const { return std::exp(log_deltas_.at(i)); }

  /// Samples [first, first + count).
  SeparationSeries slice(std::size_t first, std::size_t count) const;

 private:
  SeparationSeries(std::vector<double> t, std::vector<double> l)
      : times_(std::move(t)), log_deltas_(std::move(l)) {}

  std::vector<double> times_;
  std::vector<double> log_deltas_;
};

}  // namespace wchaos
