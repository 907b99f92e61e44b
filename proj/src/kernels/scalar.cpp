#include <cmath>

#include "wchaos/detail/kernel_backends.hpp"

namespace wchaos::kernels::scalar {

double sum(std::span<const double> x) {
  double acc = 0.0;
  for (double v : x) acc += v;
  return acc;
}

CrossMoments centered_moments(std::span<const double> x, std::span<const double> y,
                              double mx, double my) {
  CrossMoments m;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    m.sxx += dx * dx;
    m.sxy += dx * dy;
    m.syy += dy * dy;
  }
  return m;
}

double residual_sum_squares(std::span<const double> x, std::span<const double> y,
                            double intercept, double slope) {
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (intercept + slope * x[i]);
    acc += r * r;
  }
  return acc;
}

void oscillator_rk4(std::span<double> value, std::span<double> rate, double curvature,
                    double h, std::size_t steps) {
  const double half = 0.5 * h;
  const double sixth = h / 6.0;
  const double negk = -curvature;
  for (std::size_t i = 0; i < value.size(); ++i) {
    double j = value[i];
    double v = rate[i];
    for (std::size_t s = 0; s < steps; ++s) {
      const double k1j = v;
      const double k1v = negk * j;
      const double k2j = v + half * k1v;
      const double k2v = negk * (j + half * k1j);
      const double k3j = v + half * k2v;
      const double k3v = negk * (j + half * k2j);
      const double k4j = v + h * k3v;
      const double k4v = negk * (j + h * k3j);
      j = j + sixth * (((k1j + 2.0 * k2j) + 2.0 * k3j) + k4j);
      v = v + sixth * (((k1v + 2.0 * k2v) + 2.0 * k3v) + k4v);
    }
    value[i] = j;
    rate[i] = v;
  }
}

void closed_chord_norms_sq(std::span<const double* const> columns,
                           std::span<const double> signature, std::size_t count,
                           std::span<double> out) {
  for (std::size_t i = 0; i < count; ++i) out[i] = 0.0;
  for (std::size_t d = 0; d < columns.size(); ++d) {
    const double* c = columns[d];
    const double s = signature[d];
    for (std::size_t i = 0; i + 1 < count; ++i) {
      const double diff = c[i + 1] - c[i];
      out[i] += s * (diff * diff);
    }
    if (count > 0) {
      const double diff = c[0] - c[count - 1];
      out[count - 1] += s * (diff * diff);
    }
  }
}

void cat_map_advance(std::span<double> x, std::span<double> y, std::size_t steps) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    double a = x[i];
    double b = y[i];
    for (std::size_t s = 0; s < steps; ++s) {
      const double u = 2.0 * a + b;
      const double w = a + b;
      a = u - std::floor(u);
      b = w - std::floor(w);
    }
    x[i] = a;
    y[i] = b;
  }
}

}  // namespace wchaos::kernels::scalar
