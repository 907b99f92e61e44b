#include <doctest.h>

#include <cmath>
#include <vector>

#include "support.hpp"
#include "wchaos/qcalc.hpp"

using namespace wchaos::qcalc;
using wchaos::testing::Gen;

namespace {

// Independent oracles written straight from the textbook formulas.
double tau_ref(double q, double x) { return (std::pow(2.0 - q, x) - 1.0) / (1.0 - q); }

double entropy_ref(double q, const std::vector<double>& p) {
  double s = 0.0;
  for (double v : p) s += std::pow(v, q);
  return (1.0 - s) / (q - 1.0);
}

const double kGridQ[] = {0.1, 0.3, 0.5, 0.7, 0.9};

}  // namespace

TEST_CASE("deform parameter domain") {
  CHECK_THROWS_AS(DeformParam(0.0), std::invalid_argument);
  CHECK_THROWS_AS(DeformParam(1.0), std::invalid_argument);
  CHECK_THROWS_AS(DeformParam(-0.5), std::invalid_argument);
  CHECK_THROWS_AS(DeformParam(std::nan("")), std::invalid_argument);
  const DeformParam d(0.25);
  CHECK(d.q() == 0.25);
  CHECK(d.strength() == 0.75);
  CHECK(d.log_base() == doctest::Approx(std::log(1.75)));
}

TEST_CASE("distribution validation") {
  CHECK_THROWS_AS(Distribution({}), std::invalid_argument);
  CHECK_THROWS_AS(Distribution({0.5, 0.6}), std::invalid_argument);
  CHECK_THROWS_AS(Distribution({1.5, -0.5}), std::invalid_argument);
  CHECK_THROWS_AS(Distribution({std::nan(""), 1.0}), std::invalid_argument);
  CHECK_NOTHROW(Distribution({0.5, 0.5 + 5e-13}));
  const Distribution joint = product(Distribution({0.25, 0.75}), Distribution({0.5, 0.5}));
  REQUIRE(joint.size() == 4);
  CHECK(joint.probabilities()[0] == 0.125);
  CHECK(joint.probabilities()[3] == 0.375);
}

TEST_CASE("tau_q examples") {
  const DeformParam h(0.5);
  CHECK(tau_q(h, 0.0) == 0.0);
  CHECK(tau_q(h, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(tau_q(h, 2.0) == doctest::Approx(2.5).epsilon(1e-14));
  CHECK(std::abs(tau_q(DeformParam(1.0 - 1e-6), 7.0) - 7.0) <= 1e-4);
  CHECK(tau_q_inv(h, 2.5) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(tau_q_inv(h, 0.0) == 0.0);
  CHECK_THROWS_AS(tau_q_inv(h, -2.0), std::domain_error);
  CHECK_THROWS_AS(tau_q(h, 1e6), std::out_of_range);
}

TEST_CASE("deformed distance examples") {
  const DeformParam h(0.5);
  CHECK(deformed_distance(h, 0.0) == 0.0);
  const double expected = std::log(1.0 + 0.5 * std::exp(10.0)) / std::log(1.5);
  CHECK(deformed_distance(h, std::exp(10.0)) == doctest::Approx(expected).epsilon(1e-13));
  CHECK(expected == doctest::Approx(22.95).epsilon(1e-3));
  CHECK_THROWS_AS(deformed_distance(h, -1.0), std::domain_error);

  // delta = e^t is asymptotically linear in t with slope 1/ln(2-q).
  const double slope = (deformed_distance(h, std::exp(40.0)) - deformed_distance(h, std::exp(30.0))) / 10.0;
  CHECK(slope == doctest::Approx(1.0 / std::log(1.5)).epsilon(1e-10));
}

TEST_CASE("log deformed distance matches the direct form and survives huge separations") {
  Gen g(20);
  for (int trial = 0; trial < 500; ++trial) {
    const DeformParam d(g.uniform(0.01, 0.99));
    const double l = g.uniform(-600.0, 600.0);
    const double direct = std::log(deformed_distance(d, std::exp(l)));
    CHECK(log_deformed_distance(d, l) == doctest::Approx(direct).epsilon(1e-12).scale(1.0));
  }
  const DeformParam h(0.5);
  // ln delta = 1e6: deformed distance = (1e6 + ln 0.5)/ln 1.5 up to e^-1e6.
  const double big = log_deformed_distance(h, 1e6);
  CHECK(big == doctest::Approx(std::log((1e6 + std::log(0.5)) / std::log(1.5))).epsilon(1e-14));
  const double tiny = log_deformed_distance(h, -1e4);
  CHECK(tiny == doctest::Approx(-1e4 + std::log(0.5 / std::log(1.5))).epsilon(1e-14));
}

TEST_CASE("q-exponential and q-logarithm examples") {
  const DeformParam h(0.5);
  CHECK(q_exponential(h, 2.0) == doctest::Approx(4.0).epsilon(1e-15));
  for (double q : kGridQ) CHECK(q_exponential(DeformParam(q), 0.0) == 1.0);
  CHECK(std::abs(q_exponential(DeformParam(1.0 - 1e-6), 3.0) - std::exp(3.0)) <= 1e-4 * std::exp(3.0));
  CHECK(q_exponential(h, -2.0) == 0.0);
  CHECK(q_exponential(h, -5.0) == 0.0);
  CHECK(q_logarithm(h, 4.0) == doctest::Approx(2.0).epsilon(1e-15));
  for (double q : kGridQ) CHECK(q_logarithm(DeformParam(q), 1.0) == 0.0);
  CHECK_THROWS_AS(q_logarithm(h, 0.0), std::domain_error);
  CHECK_THROWS_AS(q_logarithm(h, -1.0), std::domain_error);
}

TEST_CASE("tsallis entropy examples") {
  const DeformParam h(0.5);
  CHECK(tsallis_entropy(h, Distribution({1.0, 0.0})) == 0.0);
  CHECK(tsallis_entropy(h, Distribution({0.5, 0.5})) ==
        doctest::Approx(2.0 * (std::sqrt(2.0) - 1.0)).epsilon(1e-14));
  CHECK(std::abs(tsallis_entropy(DeformParam(1.0 - 1e-7), Distribution({0.5, 0.5})) - std::log(2.0)) <=
        1e-6);
  CHECK(tsallis_compose(h, 0.0, 0.8) == doctest::Approx(0.8));
  // sa + sb + (1-q) sa sb is 3 + 2e-6 at q = 1 - 1e-6; additivity is reached as q -> 1.
  CHECK(tsallis_compose(DeformParam(1.0 - 1e-6), 1.0, 2.0) == doctest::Approx(3.0 + 2e-6).epsilon(1e-15));
  CHECK(std::abs(tsallis_compose(DeformParam(1.0 - 1e-7), 1.0, 2.0) - 3.0) <= 1e-6);
  CHECK_THROWS_AS(tsallis_compose(h, -0.1, 0.2), std::invalid_argument);
  const Distribution p({0.5, 0.5});
  const double s = tsallis_entropy(h, p);
  CHECK(std::abs(tsallis_entropy(h, product(p, p)) - tsallis_compose(h, s, s)) <= 1e-12);
}

namespace {

// Round-trip error that any double-valued tau_q must tolerate: half an ulp
// of y = tau_q(x) propagated through the inverse. It exceeds 1e-10 only
// for strongly negative x, where (2-q)^x drowns next to -1/(1-q).
double round_trip_floor(const DeformParam& d, double x) {
  const double y = std::abs(tau_q(d, x));
  const double half_ulp = 0.5 * (std::nextafter(y, 2 * y + 1) - y);
  return half_ulp * d.strength() / (std::exp(x * d.log_base()) * d.log_base());
}

}  // namespace

TEST_CASE("property: tau_q round trip on [-50, 50]") {
  Gen g(21);
  for (double q : kGridQ) {
    const DeformParam d(q);
    for (int i = 0; i < 2000; ++i) {
      const double x = g.uniform(-50.0, 50.0);
      const double err = std::abs(tau_q_inv(d, tau_q(d, x)) - x);
      CHECK(err <= std::max(1e-10, 8.0 * round_trip_floor(d, x)));
      if (x >= -20.0) CHECK(err <= 1e-10);
    }
    CHECK(std::abs(tau_q_inv(d, tau_q(d, 50.0)) - 50.0) <= 1e-10);
  }
  // Where the floor is below the tolerance the round trip meets 1e-10 on the
  // whole interval.
  const DeformParam d(0.9);
  for (double x = -50.0; x <= 50.0; x += 0.01) CHECK(std::abs(tau_q_inv(d, tau_q(d, x)) - x) <= 1e-10);
}

TEST_CASE("property: tau_q agrees with the power-law oracle") {
  Gen g(22);
  for (int i = 0; i < 2000; ++i) {
    const double q = g.uniform(0.01, 0.99);
    const double x = g.uniform(-30.0, 30.0);
    CHECK(tau_q(DeformParam(q), x) == doctest::Approx(tau_ref(q, x)).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("property: fixed points and monotonicity") {
  Gen g(23);
  for (int i = 0; i < 500; ++i) {
    const DeformParam d(g.uniform(1e-6, 1.0 - 1e-6));
    CHECK(tau_q(d, 0.0) == 0.0);
    CHECK(tau_q(d, 1.0) == 1.0);
    double a = g.uniform(-40.0, 40.0), b = g.uniform(-40.0, 40.0);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    CHECK(tau_q(d, a) < tau_q(d, b));
    const double lo = -1.0 / d.strength();
    const double ya = g.uniform(lo * 0.999, 50.0), yb = g.uniform(lo * 0.999, 50.0);
    if (ya != yb) CHECK((tau_q_inv(d, std::min(ya, yb)) < tau_q_inv(d, std::max(ya, yb))));
    const double xa = g.uniform(lo * 0.999, 20.0), xb = g.uniform(lo * 0.999, 20.0);
    if (xa != xb) CHECK((q_exponential(d, std::min(xa, xb)) < q_exponential(d, std::max(xa, xb))));
    const double pa = g.uniform(1e-6, 100.0), pb = g.uniform(1e-6, 100.0);
    if (pa != pb) CHECK((q_logarithm(d, std::min(pa, pb)) < q_logarithm(d, std::max(pa, pb))));
  }
}

TEST_CASE("property: BGS limit") {
  const DeformParam d(1.0 - 1e-6);
  for (double x = -10.0; x <= 10.0; x += 0.125) CHECK(std::abs(tau_q(d, x) - x) <= 1e-4);
}

TEST_CASE("property: q-logarithm inverts q-exponential on its support") {
  Gen g(24);
  for (int i = 0; i < 3000; ++i) {
    const DeformParam d(g.uniform(0.01, 0.99));
    const double lo = -1.0 / d.strength();
    const double x = g.uniform(lo * 0.99, 50.0);
    CHECK(std::abs(q_logarithm(d, q_exponential(d, x)) - x) <= 1e-10 * std::max(1.0, std::abs(x)));
  }
}

TEST_CASE("property: composition on independent pairs up to 8x8 outcomes") {
  Gen g(25);
  for (int i = 0; i < 400; ++i) {
    const double q = g.uniform(0.01, 0.99);
    const DeformParam d(q);
    const auto pa = g.simplex(static_cast<std::size_t>(g.integer(1, 8)));
    const auto pb = g.simplex(static_cast<std::size_t>(g.integer(1, 8)));
    // Brute-force product distribution and textbook entropy as the oracle.
    std::vector<double> joint;
    for (double a : pa)
      for (double b : pb) joint.push_back(a * b);
    const double sa = entropy_ref(q, pa), sb = entropy_ref(q, pb);
    CHECK(std::abs(entropy_ref(q, joint) - (sa + sb + (1 - q) * sa * sb)) <= 1e-12);
    const Distribution da(pa), db(pb);
    CHECK(tsallis_entropy(d, da) == doctest::Approx(sa).epsilon(1e-12).scale(1.0));
    const double lhs = tsallis_entropy(d, product(da, db));
    const double rhs = tsallis_compose(d, tsallis_entropy(d, da), tsallis_entropy(d, db));
    CHECK(std::abs(lhs - rhs) <= 1e-12);
  }
}

TEST_CASE("property: entropy is non-negative and vanishes on point masses") {
  Gen g(26);
  for (int i = 0; i < 300; ++i) {
    const DeformParam d(g.uniform(0.01, 0.99));
    CHECK(tsallis_entropy(d, Distribution(g.simplex(static_cast<std::size_t>(g.integer(1, 12))))) >= 0.0);
    std::vector<double> point(static_cast<std::size_t>(g.integer(1, 6)), 0.0);
    point[static_cast<std::size_t>(g.integer(0, static_cast<int>(point.size()) - 1))] = 1.0;
    CHECK(tsallis_entropy(d, Distribution(point)) == 0.0);
  }
}
