#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>

#include "wchaos/jacobi.hpp"
#include "wchaos/qcalc.hpp"
#include "wchaos/series.hpp"

namespace wchaos::lyapunov {

enum class Method { Standard, Modified, Deformed };

struct ExponentEstimate {
  double value = 0.0;
  double std_error = 0.0;
  double t_lo = 0.0;
  double t_hi = 0.0;
  Method method = Method::Standard;
  std::optional<double> q;  // set for Method::Deformed
};

constexpr double kDefaultTailFraction = 0.5;
constexpr std::size_t kMinSeriesSamples = 50;
constexpr std::size_t kMinWindowSamples = 10;

/// Slope of ln(delta) against t over the final tail_fraction of samples.
ExponentEstimate standard_lyapunov(const SeparationSeries& series,
                                   double tail_fraction = kDefaultTailFraction);

/// Power-law degree: slope of ln(delta) against ln(t) over the tail window.
/// Window times must be positive.
ExponentEstimate modified_lyapunov(const SeparationSeries& series,
                                   double tail_fraction = kDefaultTailFraction);

/// Every separation replaced by its deformed distance tau_q^{-1}(delta).
SeparationSeries deform_series(const qcalc::DeformParam& q, const SeparationSeries& series);

/// standard_lyapunov of deform_series(q, series).
ExponentEstimate deformed_lyapunov(const qcalc::DeformParam& q, const SeparationSeries& series,
                                   double tail_fraction = kDefaultTailFraction);

/// Benettin estimate for the tangent dynamics J'' = -K J: integrates (J, J')
/// with RK4, renormalizes to unit norm every `renorm_every` steps and
/// returns the accumulated log growth divided by T. std_error is the
/// standard error of the per-block rates.
ExponentEstimate benettin_flow_exponent(double curvature, const jacobi::JacobiState& init,
                                        double horizon, double dt, int renorm_every = 10);

using Matrix2 = std::array<std::array<double, 2>, 2>;

/// Two-exponent tangent-product accumulator for planar maps: pushes the
/// Jacobian of each step, keeps an orthonormal pair via Gram-Schmidt.
class SpectrumAccumulator {
 public:
  static constexpr std::size_t kMinSteps = 10000;
  static constexpr double kSingularDet = 1e-300;

  /// Throws std::domain_error when |det| < 1e-300, naming the step.
  void push(const Matrix2& jacobian);
  std::size_t steps() const noexcept { return steps_; }
  /// Time-averaged log stretching factors, larger first. Throws
  /// std::invalid_argument with fewer than kMinSteps pushes.
  std::pair<double, double> exponents() const;

 private:
  std::array<double, 2> u_{1.0, 0.0};
  std::array<double, 2> w_{0.0, 1.0};
  double log_sum_u_ = 0.0;
  double log_sum_w_ = 0.0;
  std::size_t steps_ = 0;
};

std::pair<double, double> map_lyapunov_spectrum(std::span<const Matrix2> jacobians);

const char* to_string(Method m) noexcept;

}  // namespace wchaos::lyapunov
