#pragma once

// Concrete dynamical systems driving the estimators: geodesic separation on
// space forms, hyperbolic toral automorphisms (cat map) and the quadratic
// map x -> 1 - a x^2 at the edge of chaos.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wchaos/series.hpp"
#include "wchaos/spaceform.hpp"

namespace wchaos::systems {

// --- geodesic flow -------------------------------------------------------

/// |J(t)| of the normal Jacobi field with J(0) = 0, J'(0) = 1 in the normal
/// part of `direction`, sampled at t_i = T i / samples, i = 1..samples.
/// Throws std::invalid_argument when `direction` has no normal component.
SeparationSeries geodesic_separation_series(const spaceform::SpaceForm& s,
                                            const spaceform::PhaseState& st,
                                            const spaceform::Tangent& direction, double horizon,
                                            int samples);

// --- toral automorphisms -------------------------------------------------

/// Integer 2x2 matrix acting on the torus R^2/Z^2.
struct TorusMatrix {
  std::int64_t a = 2, b = 1, c = 1, d = 1;  // Arnold's cat map by default
};

std::pair<double, double> cat_map_iterate(std::pair<double, double> state, std::int64_t n);

struct AnosovCheck {
  std::string name;
  bool applicable = true;
  bool passed = false;
  double measured = 0.0;  // worst observed value for the property
  std::string detail;
};

struct AnosovReport {
  double expansion_rate = 0.0;    // mu
  double contraction_rate = 0.0;  // lambda
  double constant = 0.0;          // smallest c covering every sampled bound
  std::array<double, 2> unstable{};
  std::array<double, 2> stable{};
  std::vector<AnosovCheck> checks;
  /// Worst ratios |Df^t Y| / (lambda^t |Y|) and |Df^-t Z| / (mu^-t |Z|) per t = 1..t_max.
  std::vector<double> stable_ratio;
  std::vector<double> unstable_ratio;

  bool all_passed() const;
};

/// Verifies the Anosov properties for the cat map at `samples` random points
/// (drawn from `seed`) and all 1 <= t <= t_max: invariance of the
/// eigen-splitting, uniform contraction on E^s and uniform expansion on E^u
/// with constant c <= 1 + tolerance. Tangent products run in 50-digit
/// arithmetic.
AnosovReport anosov_verify(int samples, int t_max, double tolerance, std::uint64_t seed = 42);
AnosovReport anosov_verify(const TorusMatrix& m, int samples, int t_max, double tolerance,
                           std::uint64_t seed = 42);

// --- quadratic map at the edge of chaos ----------------------------------

/// Parameter a of x -> 1 - a x^2, 0 < a <= 2.
class LogisticParams {
 public:
  explicit LogisticParams(double a);
  double a() const noexcept { return a_; }

 private:
  double a_;
};

struct LogisticSensitivity {
  /// ln xi(n) at n = 1..N (or up to the step before the orbit hit 0).
  SeparationSeries series;
  /// Iteration at which x_n was exactly 0, making xi vanish from then on.
  std::optional<std::int64_t> zero_hit;
};

/// xi(n) = |prod_{i<n} f'(x_i)| accumulated in log space.
LogisticSensitivity logistic_sensitivity_series(const LogisticParams& p, double x0,
                                                std::int64_t n);

/// Period-doubling accumulation point a_inf of x -> 1 - a x^2, from the
/// superstable 2^k-cycle parameters (bisection) and Aitken extrapolation.
/// Computed once per process.
double edge_of_chaos_param();

/// Superstable 2^k-cycle parameters A_1, A_2, ... used by edge_of_chaos_param.
std::vector<double> superstable_parameters(int max_k);

/// f_a(1) = 1 - a: a point on the orbit of the critical point x = 0. Started
/// here the orbit lies on the attractor from the first step.
double critical_orbit_start(const LogisticParams& p) noexcept;

struct QSensitivityFit {
  double q_sen = 0.0;
  double lambda_q = 0.0;
  double fit_quality = 0.0;  // 1 - R^2 of the q-logarithm fit at q_sen
  bool degraded = false;     // q_sen sits on an end of the grid
  std::size_t envelope_points = 0;
};

/// Upper envelope of xi: passes through the running-maximum records, is
/// interpolated linearly in (ln t, ln xi) between them and is sampled at
/// every series time from the first record to the last one.
SeparationSeries sensitivity_envelope(const SeparationSeries& series);

/// For each q in the grid, fits ln_q of sensitivity_envelope(series)
/// linearly in t and keeps the q with the smallest 1 - R^2.
/// Throws std::invalid_argument for fewer than 100 envelope points, fewer
/// than 20 grid values, or grid values outside (0, 1).
QSensitivityFit q_sensitivity_fit(const SeparationSeries& series, std::span<const double> q_grid);

/// lo, lo + step, ... up to hi inclusive (rounded to the step).
std::vector<double> q_grid(double lo, double hi, double step);

}  // namespace wchaos::systems
