#pragma once

// Data-parallel inner loops used by the estimators and geometry code.
//
// Every kernel has a scalar reference implementation and, on x86-64, an AVX2
// variant. The backend is chosen once at startup from the CPU feature bits
// and can be overridden with WCHAOS_KERNELS=scalar|avx2 or set_backend().
//
// Elementwise kernels (oscillator_rk4, closed_chord_norms_sq,
// cat_map_advance) are bit-identical across backends. Reductions (sum,
// centered_moments, residual_sum_squares) differ only in summation order.

#include <cstddef>
#include <span>
#include <string_view>

namespace wchaos::kernels {

enum class Backend { Scalar, Avx2 };

Backend active_backend() noexcept;
bool backend_available(Backend b) noexcept;
/// Throws std::invalid_argument when `b` is not available on this CPU/build.
void set_backend(Backend b);
std::string_view backend_name(Backend b) noexcept;

struct CrossMoments {
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
};

double sum(std::span<const double> x);

/// Sums of (x-mx)^2, (x-mx)(y-my), (y-my)^2.
CrossMoments centered_moments(std::span<const double> x, std::span<const double> y,
                              double mx, double my);

/// Sum of (y - intercept - slope*x)^2.
double residual_sum_squares(std::span<const double> x, std::span<const double> y,
                            double intercept, double slope);

/// Advances each lane (value[i], rate[i]) of J'' = -curvature*J by `steps`
/// classical RK4 steps of size h.
void oscillator_rk4(std::span<double> value, std::span<double> rate, double curvature,
                    double h, std::size_t steps);

/// Squared chord norms of a closed polyline stored column-wise.
/// columns[d][i] is coordinate d of vertex i; signature[d] is +1 or -1.
/// out[i] = sum_d signature[d] * (columns[d][(i+1)%count] - columns[d][i])^2.
void closed_chord_norms_sq(std::span<const double* const> columns,
                           std::span<const double> signature, std::size_t count,
                           std::span<double> out);

/// Applies (x, y) -> (2x + y mod 1, x + y mod 1) `steps` times to every lane.
void cat_map_advance(std::span<double> x, std::span<double> y, std::size_t steps);

}  // namespace wchaos::kernels
