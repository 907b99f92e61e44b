#include <doctest.h>

#include <cmath>
#include <cstring>
#include <numbers>
#include <vector>

#include "support.hpp"
#include "wchaos/detail/kernel_backends.hpp"
#include "wchaos/kernels.hpp"

using namespace wchaos;
using wchaos::testing::Gen;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

long double exact_sum(const std::vector<double>& v) {
  long double acc = 0.0L;
  for (double x : v) acc += x;
  return acc;
}

}  // namespace

TEST_CASE("scalar sum agrees with extended-precision accumulation") {
  Gen g(1);
  for (int trial = 0; trial < 200; ++trial) {
    const auto v = g.vector(static_cast<std::size_t>(g.integer(0, 300)), -10.0, 10.0);
    double magnitude = 0.0;
    for (double x : v) magnitude += std::abs(x);
    CHECK(std::abs(kernels::scalar::sum(v) - static_cast<double>(exact_sum(v))) <=
          1e-14 * (magnitude + 1.0));
  }
}

TEST_CASE("moment and residual kernels match direct formulas") {
  Gen g(2);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = static_cast<std::size_t>(g.integer(1, 97));
    const auto x = g.vector(n, -3.0, 3.0);
    const auto y = g.vector(n, -3.0, 3.0);
    const double mx = g.uniform(-1, 1), my = g.uniform(-1, 1);
    long double sxx = 0, sxy = 0, syy = 0, rss = 0;
    for (std::size_t i = 0; i < n; ++i) {
      sxx += (x[i] - mx) * (long double)(x[i] - mx);
      sxy += (x[i] - mx) * (long double)(y[i] - my);
      syy += (y[i] - my) * (long double)(y[i] - my);
      const long double r = y[i] - (0.5L + 2.0L * x[i]);
      rss += r * r;
    }
    const auto m = kernels::centered_moments(x, y, mx, my);
    CHECK(m.sxx == doctest::Approx(static_cast<double>(sxx)).epsilon(1e-12));
    CHECK(m.sxy == doctest::Approx(static_cast<double>(sxy)).epsilon(1e-12).scale(sxx + syy));
    CHECK(m.syy == doctest::Approx(static_cast<double>(syy)).epsilon(1e-12));
    CHECK(kernels::residual_sum_squares(x, y, 0.5, 2.0) ==
          doctest::Approx(static_cast<double>(rss)).epsilon(1e-12));
  }
}

TEST_CASE("oscillator RK4 follows cos/cosh to fourth order") {
  for (double k : {-1.0, 1.0}) {
    std::vector<double> errs;
    for (double h : {0.02, 0.01}) {
      std::vector<double> j{1.0}, v{0.0};
      kernels::oscillator_rk4(j, v, k, h, static_cast<std::size_t>(std::llround(2.0 / h)));
      const double exact = k > 0 ? std::cos(2.0) : std::cosh(2.0);
      errs.push_back(std::abs(j[0] - exact));
    }
    const double order = std::log2(errs[0] / errs[1]);
    CHECK(order == doctest::Approx(4.0).epsilon(0.05));
  }
}

TEST_CASE("closed chord norms follow the signature") {
  // Unit square in the plane, and the same square with a Minkowski sign.
  std::vector<double> cx{0, 1, 1, 0}, cy{0, 0, 1, 1};
  const double* cols[] = {cx.data(), cy.data()};
  std::vector<double> out(4);
  std::vector<double> euclid{1.0, 1.0};
  kernels::closed_chord_norms_sq(cols, euclid, 4, out);
  for (double d : out) CHECK(d == 1.0);
  std::vector<double> mink{-1.0, 1.0};
  kernels::closed_chord_norms_sq(cols, mink, 4, out);
  CHECK(out[0] == -1.0);
  CHECK(out[1] == 1.0);
  CHECK(out[2] == -1.0);
  CHECK(out[3] == 1.0);
}

TEST_CASE("cat map agrees with exact integer arithmetic on dyadic points") {
  Gen g(3);
  constexpr std::int64_t kDen = std::int64_t{1} << 40;
  for (int trial = 0; trial < 50; ++trial) {
    std::int64_t a = g.integer(0, 1 << 30) * 1024 + g.integer(0, 1023);
    std::int64_t b = g.integer(0, 1 << 30) * 1024 + g.integer(0, 1023);
    std::vector<double> x{static_cast<double>(a) / kDen}, y{static_cast<double>(b) / kDen};
    kernels::cat_map_advance(x, y, 25);
    for (int s = 0; s < 25; ++s) {
      const std::int64_t u = (2 * a + b) % kDen;
      const std::int64_t w = (a + b) % kDen;
      a = u;
      b = w;
    }
    CHECK(x[0] == static_cast<double>(a) / kDen);
    CHECK(y[0] == static_cast<double>(b) / kDen);
  }
}

TEST_CASE("backend selection") {
  CHECK(kernels::backend_available(kernels::Backend::Scalar));
  CHECK(kernels::backend_name(kernels::Backend::Scalar) == "scalar");
  CHECK(kernels::backend_name(kernels::Backend::Avx2) == "avx2");
  const kernels::Backend before = kernels::active_backend();
  kernels::set_backend(kernels::Backend::Scalar);
  CHECK(kernels::active_backend() == kernels::Backend::Scalar);
  if (!kernels::backend_available(kernels::Backend::Avx2)) {
    CHECK_THROWS_AS(kernels::set_backend(kernels::Backend::Avx2), std::invalid_argument);
  }
  kernels::set_backend(before);
}

#if defined(WCHAOS_WITH_AVX2)

TEST_CASE("AVX2 kernels are equivalent to the scalar reference") {
  if (!kernels::backend_available(kernels::Backend::Avx2)) {
    MESSAGE("CPU without AVX2; equivalence not exercised");
    return;
  }
  Gen g(4);

  SUBCASE("reductions agree to rounding") {
    for (int trial = 0; trial < 300; ++trial) {
      const std::size_t n = static_cast<std::size_t>(g.integer(0, 130));
      const auto x = g.vector(n, -5.0, 5.0);
      const auto y = g.vector(n, -5.0, 5.0);
      double mag = 1.0;
      for (double v : x) mag += std::abs(v);
      CHECK(std::abs(kernels::scalar::sum(x) - kernels::avx2::sum(x)) <= 1e-14 * mag);
      const auto a = kernels::scalar::centered_moments(x, y, 0.3, -0.2);
      const auto b = kernels::avx2::centered_moments(x, y, 0.3, -0.2);
      const double scale = 1.0 + a.sxx + a.syy;
      CHECK(std::abs(a.sxx - b.sxx) <= 1e-13 * scale);
      CHECK(std::abs(a.sxy - b.sxy) <= 1e-13 * scale);
      CHECK(std::abs(a.syy - b.syy) <= 1e-13 * scale);
      const double ra = kernels::scalar::residual_sum_squares(x, y, 0.1, 1.7);
      const double rb = kernels::avx2::residual_sum_squares(x, y, 0.1, 1.7);
      CHECK(std::abs(ra - rb) <= 1e-13 * (1.0 + ra));
    }
  }

  SUBCASE("oscillator RK4 is bit-identical") {
    for (int trial = 0; trial < 60; ++trial) {
      const std::size_t n = static_cast<std::size_t>(g.integer(0, 19));
      auto j1 = g.vector(n, -2.0, 2.0), v1 = g.vector(n, -2.0, 2.0);
      auto j2 = j1, v2 = v1;
      const double k = g.uniform(-4.0, 4.0);
      const double h = g.uniform(1e-4, 1e-2);
      const auto steps = static_cast<std::size_t>(g.integer(0, 500));
      kernels::scalar::oscillator_rk4(j1, v1, k, h, steps);
      kernels::avx2::oscillator_rk4(j2, v2, k, h, steps);
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(same_bits(j1[i], j2[i]));
        CHECK(same_bits(v1[i], v2[i]));
      }
    }
  }

  SUBCASE("chord norms are bit-identical") {
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t count = static_cast<std::size_t>(g.integer(0, 70));
      const int dims = g.integer(1, 4);
      std::vector<std::vector<double>> data;
      std::vector<const double*> cols;
      std::vector<double> sig;
      for (int d = 0; d < dims; ++d) {
        data.push_back(g.vector(count, -3.0, 3.0));
        sig.push_back(g.integer(0, 1) ? 1.0 : -1.0);
      }
      for (const auto& c : data) cols.push_back(c.data());
      std::vector<double> o1(count), o2(count);
      kernels::scalar::closed_chord_norms_sq(cols, sig, count, o1);
      kernels::avx2::closed_chord_norms_sq(cols, sig, count, o2);
      for (std::size_t i = 0; i < count; ++i) CHECK(same_bits(o1[i], o2[i]));
    }
  }

  SUBCASE("cat map is bit-identical") {
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t n = static_cast<std::size_t>(g.integer(0, 23));
      auto x1 = g.vector(n, 0.0, 1.0), y1 = g.vector(n, 0.0, 1.0);
      auto x2 = x1, y2 = y1;
      const auto steps = static_cast<std::size_t>(g.integer(0, 200));
      kernels::scalar::cat_map_advance(x1, y1, steps);
      kernels::avx2::cat_map_advance(x2, y2, steps);
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(same_bits(x1[i], x2[i]));
        CHECK(same_bits(y1[i], y2[i]));
      }
    }
  }
}

#endif
