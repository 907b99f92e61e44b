#pragma once

// Per-backend entry points. Callers should go through wchaos/kernels.hpp;
// these are exposed for the equivalence tests.

#include <cstddef>
#include <span>

#include "wchaos/kernels.hpp"

namespace wchaos::kernels {

#define WCHAOS_KERNEL_DECLS                                                                 \
  double sum(std::span<const double> x);                                                    \
  CrossMoments centered_moments(std::span<const double> x, std::span<const double> y,      \
                                double mx, double my);                                      \
  double residual_sum_squares(std::span<const double> x, std::span<const double> y,         \
                              double intercept, double slope);                              \
  void oscillator_rk4(std::span<double> value, std::span<double> rate, double curvature,    \
                      double h, std::size_t steps);                                         \
  void closed_chord_norms_sq(std::span<const double* const> columns,                        \
                             std::span<const double> signature, std::size_t count,          \
                             std::span<double> out);                                        \
  void cat_map_advance(std::span<double> x, std::span<double> y, std::size_t steps);

namespace scalar {
WCHAOS_KERNEL_DECLS
}

#if defined(WCHAOS_WITH_AVX2)
namespace avx2 {
WCHAOS_KERNEL_DECLS
}
#endif

#undef WCHAOS_KERNEL_DECLS

}  // namespace wchaos::kernels
