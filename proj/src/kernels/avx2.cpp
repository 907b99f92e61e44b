#include <immintrin.h>

#include <cmath>

#include "wchaos/detail/kernel_backends.hpp"

namespace wchaos::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  const __m128d swapped = _mm_unpackhi_pd(pair, pair);
  return _mm_cvtsd_f64(_mm_add_sd(pair, swapped));
}

}  // namespace

double sum(std::span<const double> x) {
  const std::size_t n = x.size();
  const double* p = x.data();
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(p + i));
    acc1 = _mm256_add_pd(acc1, _mm256_loadu_pd(p + i + 4));
  }
  for (; i + 4 <= n; i += 4) acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(p + i));
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += p[i];
  return acc;
}

CrossMoments centered_moments(std::span<const double> x, std::span<const double> y,
                              double mx, double my) {
  const std::size_t n = x.size();
  const __m256d vmx = _mm256_set1_pd(mx);
  const __m256d vmy = _mm256_set1_pd(my);
  __m256d sxx = _mm256_setzero_pd();
  __m256d sxy = _mm256_setzero_pd();
  __m256d syy = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(x.data() + i), vmx);
    const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(y.data() + i), vmy);
    sxx = _mm256_add_pd(sxx, _mm256_mul_pd(dx, dx));
    sxy = _mm256_add_pd(sxy, _mm256_mul_pd(dx, dy));
    syy = _mm256_add_pd(syy, _mm256_mul_pd(dy, dy));
  }
  CrossMoments m{hsum(sxx), hsum(sxy), hsum(syy)};
  for (; i < n; ++i) {
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
  const std::size_t n = x.size();
  const __m256d a = _mm256_set1_pd(intercept);
  const __m256d b = _mm256_set1_pd(slope);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d fit = _mm256_add_pd(a, _mm256_mul_pd(b, _mm256_loadu_pd(x.data() + i)));
    const __m256d r = _mm256_sub_pd(_mm256_loadu_pd(y.data() + i), fit);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(r, r));
  }
  double total = hsum(acc);
  for (; i < n; ++i) {
    const double r = y[i] - (intercept + slope * x[i]);
    total += r * r;
  }
  return total;
}

void oscillator_rk4(std::span<double> value, std::span<double> rate, double curvature,
                    double h, std::size_t steps) {
  const std::size_t n = value.size();
  const __m256d vh = _mm256_set1_pd(h);
  const __m256d half = _mm256_set1_pd(0.5 * h);
  const __m256d sixth = _mm256_set1_pd(h / 6.0);
  const __m256d negk = _mm256_set1_pd(-curvature);
  const __m256d two = _mm256_set1_pd(2.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d j = _mm256_loadu_pd(value.data() + i);
    __m256d v = _mm256_loadu_pd(rate.data() + i);
    for (std::size_t s = 0; s < steps; ++s) {
      const __m256d k1j = v;
      const __m256d k1v = _mm256_mul_pd(negk, j);
      const __m256d k2j = _mm256_add_pd(v, _mm256_mul_pd(half, k1v));
      const __m256d k2v = _mm256_mul_pd(negk, _mm256_add_pd(j, _mm256_mul_pd(half, k1j)));
      const __m256d k3j = _mm256_add_pd(v, _mm256_mul_pd(half, k2v));
      const __m256d k3v = _mm256_mul_pd(negk, _mm256_add_pd(j, _mm256_mul_pd(half, k2j)));
      const __m256d k4j = _mm256_add_pd(v, _mm256_mul_pd(vh, k3v));
      const __m256d k4v = _mm256_mul_pd(negk, _mm256_add_pd(j, _mm256_mul_pd(vh, k3j)));
      const __m256d dj = _mm256_add_pd(
          _mm256_add_pd(_mm256_add_pd(k1j, _mm256_mul_pd(two, k2j)), _mm256_mul_pd(two, k3j)),
          k4j);
      const __m256d dv = _mm256_add_pd(
          _mm256_add_pd(_mm256_add_pd(k1v, _mm256_mul_pd(two, k2v)), _mm256_mul_pd(two, k3v)),
          k4v);
      j = _mm256_add_pd(j, _mm256_mul_pd(sixth, dj));
      v = _mm256_add_pd(v, _mm256_mul_pd(sixth, dv));
    }
    _mm256_storeu_pd(value.data() + i, j);
    _mm256_storeu_pd(rate.data() + i, v);
  }
  if (i < n) {
    scalar::oscillator_rk4(value.subspan(i), rate.subspan(i), curvature, h, steps);
  }
}

void closed_chord_norms_sq(std::span<const double* const> columns,
                           std::span<const double> signature, std::size_t count,
                           std::span<double> out) {
  for (std::size_t i = 0; i < count; ++i) out[i] = 0.0;
  if (count == 0) return;
  for (std::size_t d = 0; d < columns.size(); ++d) {
    const double* c = columns[d];
    const double s = signature[d];
    const __m256d vs = _mm256_set1_pd(s);
    std::size_t i = 0;
    for (; i + 5 <= count; i += 4) {
      const __m256d diff = _mm256_sub_pd(_mm256_loadu_pd(c + i + 1), _mm256_loadu_pd(c + i));
      const __m256d acc = _mm256_loadu_pd(out.data() + i);
      _mm256_storeu_pd(out.data() + i,
                       _mm256_add_pd(acc, _mm256_mul_pd(vs, _mm256_mul_pd(diff, diff))));
    }
    for (; i + 1 < count; ++i) {
      const double diff = c[i + 1] - c[i];
      out[i] += s * (diff * diff);
    }
    const double diff = c[0] - c[count - 1];
    out[count - 1] += s * (diff * diff);
  }
}

void cat_map_advance(std::span<double> x, std::span<double> y, std::size_t steps) {
  const std::size_t n = x.size();
  const __m256d two = _mm256_set1_pd(2.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d a = _mm256_loadu_pd(x.data() + i);
    __m256d b = _mm256_loadu_pd(y.data() + i);
    for (std::size_t s = 0; s < steps; ++s) {
      const __m256d u = _mm256_add_pd(_mm256_mul_pd(two, a), b);
      const __m256d w = _mm256_add_pd(a, b);
      a = _mm256_sub_pd(u, _mm256_floor_pd(u));
      b = _mm256_sub_pd(w, _mm256_floor_pd(w));
    }
    _mm256_storeu_pd(x.data() + i, a);
    _mm256_storeu_pd(y.data() + i, b);
  }
  if (i < n) scalar::cat_map_advance(x.subspan(i), y.subspan(i), steps);
}

}  // namespace wchaos::kernels::avx2
