#pragma once

// Jacobi fields along unit-speed geodesics of a space form. In a parallel
// orthonormal (Fermi) frame the normal components decouple into
// J_i'' + K J_i = 0.

#include <span>
#include <vector>

#include "wchaos/series.hpp"

namespace wchaos::jacobi {

/// Initial values a_i = J_i(0) and derivatives b_i = J_i'(0) per Fermi direction.
struct JacobiCoeffs {
  std::vector<double> a;
  std::vector<double> b;
};

/// One scalar Jacobi component and its derivative.
struct JacobiState {
  double value = 0.0;
  double derivative = 0.0;
};

/// a_i cosh(sqrt(-K) t) + b_i sinh(sqrt(-K) t)/sqrt(-K) for K < 0, the
/// affine and trigonometric continuations for K = 0 and K > 0.
std::vector<double> jacobi_closed_form(double curvature, const JacobiCoeffs& c, double t);

/// Closed-form value and derivative of a single component.
JacobiState jacobi_closed_state(double curvature, const JacobiState& init, double t);

/// RK4 integration of J'' = -K J up to time t with step dt (the last step is
/// shortened to land on t). Throws std::invalid_argument for dt <= 0 or t < 0.
JacobiState jacobi_integrate(double curvature, const JacobiState& init, double t, double dt);

/// Same as jacobi_integrate for many components at once (vectorized).
std::vector<JacobiState> jacobi_integrate_batch(double curvature,
                                                std::span<const JacobiState> init, double t,
                                                double dt);

/// J1 J2' - J2 J1'.
double wronskian(const JacobiState& j1, const JacobiState& j2) noexcept;

enum class GrowthKind { Bounded, Linear, Polynomial, Exponential };

struct GrowthClass {
  GrowthKind kind = GrowthKind::Bounded;
  /// Degree for Linear/Polynomial, rate for Exponential, 0 for Bounded.
  double parameter = 0.0;
  double rss_exponential = 0.0;
  double rss_polynomial = 0.0;
};

/// Classifies the asymptotic growth of a separation series from its tail
/// half: ln(delta) against t (exponential) versus against ln t (power law),
/// smaller residual sum of squares wins. Needs >= 50 samples with positive
/// tail times; exact residual ties throw std::domain_error.
GrowthClass classify_separation(const SeparationSeries& series);

const char* to_string(GrowthKind kind) noexcept;

}  // namespace wchaos::jacobi
