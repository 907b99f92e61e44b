#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "support.hpp"
#include "wchaos/jacobi.hpp"

using namespace wchaos;
using namespace wchaos::jacobi;
using wchaos::testing::Gen;

namespace {

SeparationSeries sampled(double t0, double t1, int n, double (*f)(double)) {
  std::vector<double> t(static_cast<std::size_t>(n)), d(t.size());
  for (int i = 0; i < n; ++i) {
    t[static_cast<std::size_t>(i)] = t0 + (t1 - t0) * i / (n - 1);
    d[static_cast<std::size_t>(i)] = f(t[static_cast<std::size_t>(i)]);
  }
  return SeparationSeries::from_deltas(std::move(t), d);
}

}  // namespace

TEST_CASE("closed form examples") {
  for (double t : {0.0, 0.5, 2.0, 7.0}) {
    CHECK(jacobi_closed_form(-1, {{0.0}, {1.0}}, t)[0] == doctest::Approx(std::sinh(t)).epsilon(1e-15).scale(1.0));
  }
  CHECK(jacobi_closed_form(0, {{0.0}, {1.0}}, 7.0)[0] == 7.0);
  CHECK(jacobi_closed_form(-4, {{1.0}, {0.0}}, 1.0)[0] == doctest::Approx(std::cosh(2.0)));
  CHECK(jacobi_closed_form(-4, {{1.0}, {0.0}}, 1.0)[0] == doctest::Approx(3.7622).epsilon(1e-4));
  // b is J'(0): for K = -4 the sinh term carries 1/2.
  CHECK(jacobi_closed_form(-4, {{0.0}, {1.0}}, 1.0)[0] == doctest::Approx(std::sinh(2.0) / 2.0));
  CHECK(jacobi_closed_form(1, {{0.0, 2.0}, {1.0, 0.0}}, 0.3)[1] == doctest::Approx(2.0 * std::cos(0.3)));
  CHECK_THROWS_AS(jacobi_closed_form(-1, {{0.0, 1.0}, {1.0}}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(jacobi_closed_form(-1, {{0.0}, {1.0}}, -1.0), std::invalid_argument);
}

TEST_CASE("property: closed form satisfies the Jacobi equation") {
  // The centered second difference reproduces -K J with an O(h^2) error.
  Gen g(40);
  for (int i = 0; i < 200; ++i) {
    const double k = g.uniform(-4.0, 4.0);
    const JacobiCoeffs c{{g.uniform(-2, 2)}, {g.uniform(-2, 2)}};
    const double t = g.uniform(0.5, 3.0);
    std::vector<double> errs;
    for (double h : {2e-2, 1e-2}) {
      const double jm = jacobi_closed_form(k, c, t - h)[0];
      const double j0 = jacobi_closed_form(k, c, t)[0];
      const double jp = jacobi_closed_form(k, c, t + h)[0];
      errs.push_back(std::abs((jp - 2 * j0 + jm) / (h * h) + k * j0));
    }
    const double amp = std::abs(c.a[0]) + std::abs(c.b[0]) / std::sqrt(std::abs(k));
    const double bound = 2e-2 * 2e-2 / 12.0 * k * k * amp * std::exp(std::sqrt(std::max(-k, 0.0)) * 3.1);
    CHECK(errs[0] <= 1.1 * bound + 1e-9);
    if (errs[0] > 1e-7) CHECK(errs[0] / errs[1] == doctest::Approx(4.0).epsilon(0.05));
  }
}

TEST_CASE("integration examples") {
  const JacobiState s = jacobi_integrate(-1, {0.0, 1.0}, 10.0, 1e-3);
  CHECK(std::abs(s.value / std::sinh(10.0) - 1.0) <= 1e-8);
  CHECK(std::sinh(10.0) == doctest::Approx(11013.23).epsilon(1e-6));
  for (double t : {0.7, 3.0, 10.0}) CHECK(jacobi_integrate(0, {1.0, 0.0}, t, 1e-3).value == 1.0);
  CHECK(std::abs(jacobi_integrate(1, {0.0, 1.0}, std::numbers::pi, 1e-3).value) <= 1e-7);
  CHECK_THROWS_AS(jacobi_integrate(1, {0.0, 1.0}, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(jacobi_integrate(1, {0.0, 1.0}, 1.0, -1e-3), std::invalid_argument);
  // A horizon that is not a multiple of dt ends exactly on t.
  const JacobiState odd = jacobi_integrate(-1, {0.0, 1.0}, 1.00037, 1e-3);
  CHECK(odd.value == doctest::Approx(std::sinh(1.00037)).epsilon(1e-12));
}

TEST_CASE("batch integration equals per-component integration") {
  Gen g(41);
  std::vector<JacobiState> init;
  for (int i = 0; i < 11; ++i) init.push_back({g.uniform(-1, 1), g.uniform(-1, 1)});
  const auto batch = jacobi_integrate_batch(-2.0, init, 3.3, 1e-3);
  for (std::size_t i = 0; i < init.size(); ++i) {
    const JacobiState one = jacobi_integrate(-2.0, init[i], 3.3, 1e-3);
    CHECK(batch[i].value == one.value);
    CHECK(batch[i].derivative == one.derivative);
  }
}

TEST_CASE("property: Wronskian is conserved") {
  Gen g(42);
  for (double k : {-4.0, -1.0, 0.0, 1.0}) {
    for (int i = 0; i < 5; ++i) {
      const JacobiState a{g.uniform(-1, 1), g.uniform(-1, 1)}, b{g.uniform(-1, 1), g.uniform(-1, 1)};
      const double w0 = wronskian(a, b);
      std::vector<JacobiState> st{a, b};
      for (int step = 0; step < 10; ++step) {
        st = jacobi_integrate_batch(k, st, 1.0, 1e-3);
        const double size = std::abs(st[0].value * st[1].derivative) + std::abs(st[1].value * st[0].derivative);
        CHECK(std::abs(wronskian(st[0], st[1]) - w0) <= 1e-9 * std::max(1.0, size));
      }
    }
  }
}

TEST_CASE("classification examples") {
  const GrowthClass e = classify_separation(sampled(5, 30, 500, [](double t) { return std::sinh(t); }));
  CHECK(e.kind == GrowthKind::Exponential);
  CHECK(e.parameter == doctest::Approx(1.0).epsilon(0.02));
  CHECK(classify_separation(sampled(0.1, 30, 300, [](double t) { return t; })).kind == GrowthKind::Linear);
  const GrowthClass p = classify_separation(sampled(1, 50, 300, [](double t) { return t * t; }));
  CHECK(p.kind == GrowthKind::Polynomial);
  CHECK(p.parameter == doctest::Approx(2.0).epsilon(0.025));
  const GrowthClass b = classify_separation(sampled(1, 50, 300, [](double t) { return 1.0 + 1e-4 * std::sin(t); }));
  CHECK(b.kind == GrowthKind::Bounded);
  CHECK_THROWS_AS(classify_separation(sampled(1, 2, 20, [](double t) { return t; })), std::invalid_argument);
  CHECK(std::string(to_string(GrowthKind::Exponential)) == "exponential");
}

TEST_CASE("property: only linear or exponential growth for K <= 0") {
  for (double k : {-4.0, -1.0, -0.25, 0.0}) {
    for (double a : {0.0, 0.5}) {
      std::vector<double> t, d;
      for (int i = 1; i <= 600; ++i) {
        t.push_back(30.0 * i / 600);
        d.push_back(std::abs(jacobi_closed_form(k, {{a}, {1.0}}, t.back())[0]));
      }
      const GrowthKind kind = classify_separation(SeparationSeries::from_deltas(t, d)).kind;
      INFO("K=" << k << " a=" << a);
      CHECK((kind == GrowthKind::Linear || kind == GrowthKind::Exponential));
    }
  }
}
