#include <doctest.h>

#include <cmath>
#include <vector>

#include "support.hpp"
#include "wchaos/random.hpp"
#include "wchaos/regression.hpp"

using namespace wchaos;
using wchaos::testing::Gen;

TEST_CASE("exact lines are recovered") {
  Gen g(10);
  for (int trial = 0; trial < 100; ++trial) {
    const double slope = g.uniform(-5, 5), intercept = g.uniform(-5, 5);
    const auto x = g.vector(static_cast<std::size_t>(g.integer(3, 200)), -10, 10);
    std::vector<double> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = intercept + slope * x[i];
    const LinearFit f = fit_line(x, y);
    CHECK(f.slope == doctest::Approx(slope).epsilon(1e-10).scale(1.0));
    CHECK(f.intercept == doctest::Approx(intercept).epsilon(1e-10).scale(1.0));
    CHECK(f.r_squared == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(f.count == x.size());
  }
}

TEST_CASE("fit matches the normal equations on noisy data") {
  const std::vector<double> x{0, 1, 2, 3, 4};
  const std::vector<double> y{1.1, 2.9, 5.2, 6.8, 9.1};
  // Closed-form OLS by hand: xbar = 2, ybar = 5.02, Sxx = 10, Sxy = 19.9.
  const LinearFit f = fit_line(x, y);
  CHECK(f.slope == doctest::Approx(1.99));
  CHECK(f.intercept == doctest::Approx(5.02 - 1.99 * 2));
  double rss = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (f.intercept + f.slope * x[i]);
    rss += r * r;
  }
  CHECK(f.rss == doctest::Approx(rss));
  CHECK(f.slope_stderr == doctest::Approx(std::sqrt(rss / 3.0 / 10.0)));
}

TEST_CASE("regression preconditions") {
  const std::vector<double> two{1, 2};
  CHECK_THROWS_AS(fit_line(two, two), std::invalid_argument);
  const std::vector<double> c{1, 1, 1}, y{1, 2, 3};
  CHECK_THROWS_AS(fit_line(c, y), std::invalid_argument);
  const std::vector<double> x3{1, 2, 3}, y2{1, 2};
  CHECK_THROWS_AS(fit_line(x3, y2), std::invalid_argument);
}

TEST_CASE("counter RNG is a pure function of seed and counter") {
  CounterRng a(42), b(42);
  for (int i = 0; i < 10; ++i) CHECK(a.next() == b.next());
  CounterRng c(42);
  CHECK(c.at(5) == splitmix64(42 + 6 * 0x9E3779B97F4A7C15ULL));
  CHECK(CounterRng(7).at(3) != CounterRng(8).at(3));
  for (int i = 0; i < 1000; ++i) {
    const double u = a.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  // Reference splitmix64 output for input 0 (first draw of seed 0 in the
  // usual stateful formulation).
  CHECK(splitmix64(0x9E3779B97F4A7C15ULL) == 0xE220A8397B1DCDAFULL);
}

TEST_CASE("golden sequence is equidistributed") {
  std::vector<int> bins(10, 0);
  for (std::uint64_t k = 0; k < 1000; ++k) {
    const double v = golden_sequence(k, 0.25);
    REQUIRE(v >= 0.0);
    REQUIRE(v < 1.0);
    ++bins[static_cast<std::size_t>(v * 10)];
  }
  for (int b : bins) CHECK(std::abs(b - 100) <= 3);
}
