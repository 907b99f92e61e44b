#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "wchaos/detail/kernel_backends.hpp"
#include "wchaos/kernels.hpp"

namespace wchaos::kernels {

namespace {

bool cpu_has_avx2() noexcept {
#if defined(WCHAOS_WITH_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Backend initial_backend() noexcept {
  Backend best = cpu_has_avx2() ? Backend::Avx2 : Backend::Scalar;
  if (const char* env = std::getenv("WCHAOS_KERNELS")) {
    const std::string want(env);
    if (want == "scalar") return Backend::Scalar;
    if (want == "avx2" && cpu_has_avx2()) return Backend::Avx2;
  }
  return best;
}

std::atomic<Backend>& current() {
  static std::atomic<Backend> b{initial_backend()};
  return b;
}

}  // namespace

Backend active_backend() noexcept { return current().load(std::memory_order_relaxed); }

bool backend_available(Backend b) noexcept {
  return b == Backend::Scalar || (b == Backend::Avx2 && cpu_has_avx2());
}

void set_backend(Backend b) {
  if (!backend_available(b)) {
    throw std::invalid_argument("kernel backend not available: " +
                                std::string(backend_name(b)));
  }
  current().store(b, std::memory_order_relaxed);
}

std::string_view backend_name(Backend b) noexcept {
  switch (b) {
    case Backend::Scalar:
      return "scalar";
    case Backend::Avx2:
      return "avx2";
  }
  return "unknown";
}

#if defined(WCHAOS_WITH_AVX2)
#define WCHAOS_DISPATCH(call)                                           \
  do {                                                                  \
    if (active_backend() == Backend::Avx2) return avx2::call;           \
    return scalar::call;                                                \
  } while (0)
#else
#define WCHAOS_DISPATCH(call) return scalar::call
#endif

double sum(std::span<const double> x) { WCHAOS_DISPATCH(sum(x)); }

CrossMoments centered_moments(std::span<const double> x, std::span<const double> y,
                              double mx, double my) {
  WCHAOS_DISPATCH(centered_moments(x, y, mx, my));
}

double residual_sum_squares(std::span<const double> x, std::span<const double> y,
                            double intercept, double slope) {
  WCHAOS_DISPATCH(residual_sum_squares(x, y, intercept, slope));
}

void oscillator_rk4(std::span<double> value, std::span<double> rate, double curvature,
                    double h, std::size_t steps) {
  WCHAOS_DISPATCH(oscillator_rk4(value, rate, curvature, h, steps));
}

void closed_chord_norms_sq(std::span<const double* const> columns,
                           std::span<const double> signature, std::size_t count,
                           std::span<double> out) {
  WCHAOS_DISPATCH(closed_chord_norms_sq(columns, signature, count, out));
}

void cat_map_advance(std::span<double> x, std::span<double> y, std::size_t steps) {
  WCHAOS_DISPATCH(cat_map_advance(x, y, steps));
}

#undef WCHAOS_DISPATCH

}  // namespace wchaos::kernels
