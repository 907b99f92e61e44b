#include "wchaos/systems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "wchaos/jacobi.hpp"
#include "wchaos/kernels.hpp"
#include "wchaos/qcalc.hpp"
#include "wchaos/random.hpp"
#include "wchaos/regression.hpp"

namespace wchaos::systems {

namespace sf = wchaos::spaceform;

// --- geodesic flow -------------------------------------------------------

SeparationSeries geodesic_separation_series(const sf::SpaceForm& s, const sf::PhaseState& st,
                                            const sf::Tangent& direction, double horizon,
                                            int samples) {
  if (!(horizon > 0.0)) throw std::invalid_argument("separation series: T must be positive");
  if (samples < 50) throw std::invalid_argument("separation series: samples must be >= 50");
  const sf::PhaseState checked = sf::make_phase_state(s, st.position, st.velocity);

  // Normal part of the perturbation direction.
  const double along = sf::metric_inner(s, checked.position, direction, checked.velocity);
  sf::Tangent normal = direction;
  for (std::size_t i = 0; i < normal.coords.size(); ++i) {
    normal.coords[i] -= along * checked.velocity.coords[i];
  }
  const double size = sf::metric_norm(s, checked.position, direction);
  const double normal_size = sf::metric_norm(s, checked.position, normal);
  if (!(normal_size > 1e-12 * std::max(size, 1.0))) {
    throw std::invalid_argument("separation series: direction has no normal component");
  }

  constexpr double kStep = 1e-3;
  const double k = s.curvature();
  const double interval = horizon / samples;
  const double dt = std::min(kStep, interval);
  std::vector<double> times(static_cast<std::size_t>(samples));
  std::vector<double> logs(times.size());
  jacobi::JacobiState state{0.0, 1.0};
  for (std::size_t i = 0; i < times.size(); ++i) {
    state = jacobi::jacobi_integrate(k, state, interval, dt);
    times[i] = horizon * static_cast<double>(i + 1) / samples;
    const double mag = std::abs(state.value);
    if (!(mag > 0.0)) {
      throw std::domain_error("separation series: Jacobi field vanished (conjugate point)");
    }
    logs[i] = std::log(mag);
  }
  return SeparationSeries::from_log_deltas(std::move(times), std::move(logs));
}

// --- toral automorphisms -------------------------------------------------

std::pair<double, double> cat_map_iterate(std::pair<double, double> state, std::int64_t n) {
  if (n < 0) throw std::invalid_argument("cat_map_iterate: n must be >= 0");
  double x = state.first;
  double y = state.second;
  kernels::cat_map_advance(std::span<double>(&x, 1), std::span<double>(&y, 1),
                           static_cast<std::size_t>(n));
  return {x, y};
}

bool AnosovReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const AnosovCheck& c) { return !c.applicable || c.passed; });
}

namespace {

using Real = boost::multiprecision::cpp_bin_float_50;
using RVec = std::array<Real, 2>;

struct RMat {
  Real a, b, c, d;
};

RVec times(const RMat& m, const RVec& v) { return {m.a * v[0] + m.b * v[1], m.c * v[0] + m.d * v[1]}; }

Real norm(const RVec& v) { return boost::multiprecision::sqrt(v[0] * v[0] + v[1] * v[1]); }

// |sin| of the angle between two vectors.
Real sin_angle(const RVec& u, const RVec& v) {
  return boost::multiprecision::abs(u[0] * v[1] - u[1] * v[0]) / (norm(u) * norm(v));
}

RVec eigenvector(const RMat& m, const Real& ev, const RVec& fallback) {
  const Real tiny = Real(1e-40);
  RVec v = fallback;
  if (boost::multiprecision::abs(m.b) > tiny) {
    v = {m.b, ev - m.a};
  } else if (boost::multiprecision::abs(m.c) > tiny) {
    v = {ev - m.d, m.c};
  }
  const Real n = norm(v);
  return {v[0] / n, v[1] / n};
}

}  // namespace

AnosovReport anosov_verify(int samples, int t_max, double tolerance, std::uint64_t seed) {
  return anosov_verify(TorusMatrix{}, samples, t_max, tolerance, seed);
}

AnosovReport anosov_verify(const TorusMatrix& tm, int samples, int t_max, double tolerance,
                           std::uint64_t seed) {
  if (samples < 100) throw std::invalid_argument("anosov_verify: samples must be >= 100");
  if (t_max < 10) throw std::invalid_argument("anosov_verify: t_max must be >= 10");
  const std::int64_t det = tm.a * tm.d - tm.b * tm.c;
  if (det != 1 && det != -1) {
    throw std::invalid_argument("anosov_verify: matrix is not a torus automorphism");
  }

  const RMat m{Real(tm.a), Real(tm.b), Real(tm.c), Real(tm.d)};
  const RMat inv{Real(tm.d * det), Real(-tm.b * det), Real(-tm.c * det), Real(tm.a * det)};
  const Real tr = m.a + m.d;
  const Real disc = tr * tr - 4 * Real(det);
  const Real root = disc > 0 ? boost::multiprecision::sqrt(disc) : Real(0);
  const Real ev_big = (tr + (tr >= 0 ? root : -root)) / 2;
  const Real ev_small = Real(det) / ev_big;
  const Real mu = boost::multiprecision::abs(ev_big);
  const Real lambda = boost::multiprecision::abs(ev_small);
  const RVec e_u = eigenvector(m, ev_big, RVec{Real(1), Real(0)});
  const RVec e_s = disc > 0 ? eigenvector(m, ev_small, RVec{Real(0), Real(1)})
                            : RVec{-e_u[1], e_u[0]};

  AnosovReport report;
  report.expansion_rate = mu.convert_to<double>();
  report.contraction_rate = lambda.convert_to<double>();
  report.unstable = {e_u[0].convert_to<double>(), e_u[1].convert_to<double>()};
  report.stable = {e_s[0].convert_to<double>(), e_s[1].convert_to<double>()};
  report.stable_ratio.assign(static_cast<std::size_t>(t_max), 0.0);
  report.unstable_ratio.assign(static_cast<std::size_t>(t_max), 0.0);

  double worst_angle = 0.0;
  CounterRng rng(seed);
  for (int sample = 0; sample < samples; ++sample) {
    // The orbit is carried along for completeness; the differential of a
    // linear automorphism is the same matrix at every orbit point.
    std::pair<double, double> x{rng.uniform(), rng.uniform()};
    RVec ys = e_s;
    RVec zu = e_u;
    RVec yu = e_u;
    RVec zs = e_s;
    Real lambda_t = 1;
    Real mu_inv_t = 1;
    for (int t = 1; t <= t_max; ++t) {
      x = cat_map_iterate(x, 1);
      ys = times(m, ys);
      yu = times(m, yu);
      zu = times(inv, zu);
      zs = times(inv, zs);
      lambda_t *= lambda;
      mu_inv_t /= mu;
      const auto idx = static_cast<std::size_t>(t - 1);
      const double rs = (norm(ys) / lambda_t).convert_to<double>();
      const double ru = (norm(zu) / mu_inv_t).convert_to<double>();
      report.stable_ratio[idx] = std::max(report.stable_ratio[idx], rs);
      report.unstable_ratio[idx] = std::max(report.unstable_ratio[idx], ru);
      const double angle = std::max({sin_angle(ys, e_s).convert_to<double>(),
                                     sin_angle(yu, e_u).convert_to<double>(),
                                     sin_angle(zs, e_s).convert_to<double>(),
                                     sin_angle(zu, e_u).convert_to<double>()});
      worst_angle = std::max(worst_angle, angle);
    }
  }

  const double c_s = *std::max_element(report.stable_ratio.begin(), report.stable_ratio.end());
  const double c_u = *std::max_element(report.unstable_ratio.begin(), report.unstable_ratio.end());
  report.constant = std::max(c_s, c_u);
  const double c_bound = 1.0 + tolerance;

  report.checks.push_back({"flow-direction", false, true, 0.0,
                           "E^0 is not defined for a discrete map"});
  report.checks.push_back({"invariant-splitting", true, worst_angle <= tolerance, worst_angle,
                           "max |sin| between Df^{+-t} E and E at the image point"});
  report.checks.push_back({"uniform-contraction", true,
                           report.contraction_rate < 1.0 - tolerance && c_s <= c_bound, c_s,
                           "max |Df^t Y| / (lambda^t |Y|) over Y in E^s"});
  report.checks.push_back({"uniform-expansion", true,
                           report.expansion_rate > 1.0 + tolerance && c_u <= c_bound, c_u,
                           "max |Df^-t Z| / (mu^-t |Z|) over Z in E^u"});
  return report;
}

// --- quadratic map -------------------------------------------------------

LogisticParams::LogisticParams(double a) : a_(a) {
  if (!(a > 0.0 && a <= 2.0)) throw std::invalid_argument("logistic parameter a must be in (0, 2]");
}

LogisticSensitivity logistic_sensitivity_series(const LogisticParams& p, double x0,
                                                std::int64_t n) {
  if (!(x0 > -1.0 && x0 < 1.0)) throw std::invalid_argument("logistic: x0 must be in (-1, 1)");
  if (n < 1000) throw std::invalid_argument("logistic: N must be >= 1000");
  const double a = p.a();
  std::vector<double> times;
  std::vector<double> logs;
  times.reserve(static_cast<std::size_t>(n));
  logs.reserve(static_cast<std::size_t>(n));
  std::optional<std::int64_t> zero_hit;
  double x = x0;
  double log_xi = 0.0;
  for (std::int64_t i = 1; i <= n; ++i) {
    if (x == 0.0) {
      zero_hit = i;
      break;
    }
    log_xi += std::log(std::abs(2.0 * a * x));
    x = 1.0 - a * x * x;
    times.push_back(static_cast<double>(i));
    logs.push_back(log_xi);
  }
  return {SeparationSeries::from_log_deltas(std::move(times), std::move(logs)), zero_hit};
}

namespace {

// f_a^{2^k}(0) for x -> 1 - a x^2.
double critical_orbit(double a, int k) {
  double x = 0.0;
  const std::int64_t steps = std::int64_t{1} << k;
  for (std::int64_t i = 0; i < steps; ++i) x = 1.0 - a * x * x;
  return x;
}

double bisect_superstable(int k, double lo, double hi) {
  double flo = critical_orbit(lo, k);
  const double fhi = critical_orbit(hi, k);
  if (!(flo * fhi < 0.0)) {
    throw std::runtime_error("superstable bracket has no sign change at k=" + std::to_string(k));
  }
  for (int it = 0; it < 200 && hi - lo > 2.0 * std::numeric_limits<double>::epsilon() * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = critical_orbit(mid, k);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::vector<double> superstable_parameters(int max_k) {
  if (max_k < 2 || max_k > 20) throw std::invalid_argument("superstable_parameters: k in [2, 20]");
  constexpr double kFeigenbaumDelta = 4.669201609102990;
  std::vector<double> params{1.0};  // A_1: 0 -> 1 -> 0
  params.push_back(bisect_superstable(2, 1.1, 1.35));
  for (int k = 3; k <= max_k; ++k) {
    const double last = params.back();
    const double gap = last - params[params.size() - 2];
    const double ratio = params.size() >= 3 ? (params[params.size() - 2] - params[params.size() - 3]) / gap
                                            : kFeigenbaumDelta;
    const double step = gap / ratio;
    params.push_back(bisect_superstable(k, last + 0.5 * step, last + 1.15 * step));
  }
  return params;
}

double edge_of_chaos_param() {
  static const double cached = [] {
    const std::vector<double> a = superstable_parameters(16);
    // Aitken delta-squared on the geometrically converging tail.
    const std::size_t n = a.size();
    const double d1 = a[n - 1] - a[n - 2];
    const double d0 = a[n - 2] - a[n - 3];
    return a[n - 1] - d1 * d1 / (d1 - d0);
  }();
  return cached;
}

SeparationSeries sensitivity_envelope(const SeparationSeries& series) {
  std::vector<std::size_t> records;
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (series.log_delta(i) > best) {
      best = series.log_delta(i);
      records.push_back(i);
    }
  }
  if (records.empty()) return series;
  if (records.size() > 1 && !(series.time(records.front()) > 0.0)) {
    throw std::invalid_argument("sensitivity_envelope: record times must be positive");
  }

  std::vector<double> times;
  std::vector<double> logs;
  times.reserve(records.back() - records.front() + 1);
  logs.reserve(times.capacity());
  for (std::size_t r = 0; r + 1 < records.size(); ++r) {
    const std::size_t i0 = records[r];
    const std::size_t i1 = records[r + 1];
    const double a0 = std::log(series.time(i0));
    const double a1 = std::log(series.time(i1));
    const double l0 = series.log_delta(i0);
    const double l1 = series.log_delta(i1);
    for (std::size_t i = i0; i < i1; ++i) {
      const double w = (std::log(series.time(i)) - a0) / (a1 - a0);
      times.push_back(series.time(i));
      logs.push_back(l0 + w * (l1 - l0));
    }
  }
  times.push_back(series.time(records.back()));
  logs.push_back(series.log_delta(records.back()));
  return SeparationSeries::from_log_deltas(std::move(times), std::move(logs));
}

QSensitivityFit q_sensitivity_fit(const SeparationSeries& series, std::span<const double> grid) {
  if (grid.size() < 20) throw std::invalid_argument("q_sensitivity_fit: grid needs >= 20 values");
  for (double q : grid) {
    if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("q_sensitivity_fit: q outside (0, 1)");
  }

  const SeparationSeries envelope = sensitivity_envelope(series);
  if (envelope.size() < 100) {
    throw std::invalid_argument("q_sensitivity_fit: envelope has " +
                                std::to_string(envelope.size()) + " points, need >= 100");
  }
  if (!(envelope.time(0) > 0.0)) {
    throw std::invalid_argument("q_sensitivity_fit: envelope times must be positive");
  }
  const auto env_t = envelope.times();
  const auto env_log = envelope.log_deltas();

  QSensitivityFit out;
  out.envelope_points = env_t.size();
  out.fit_quality = std::numeric_limits<double>::infinity();
  std::size_t best_index = 0;
  std::vector<double> y(env_t.size());
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const qcalc::DeformParam d(grid[g]);
    bool finite = true;
    for (std::size_t i = 0; i < y.size(); ++i) {
      y[i] = std::expm1(d.strength() * env_log[i]) / d.strength();
      finite = finite && std::isfinite(y[i]);
    }
    if (!finite) continue;
    const LinearFit fit = fit_line(env_t, y);
    const double residual = 1.0 - fit.r_squared;
    if (residual < out.fit_quality) {
      out.fit_quality = residual;
      out.q_sen = grid[g];
      out.lambda_q = fit.slope;
      best_index = g;
    }
  }
  if (!std::isfinite(out.fit_quality)) {
    throw std::domain_error("q_sensitivity_fit: q-logarithm overflowed for every grid value");
  }
  out.degraded = best_index == 0 || best_index + 1 == grid.size();
  return out;
}

double critical_orbit_start(const LogisticParams& p) noexcept { return 1.0 - p.a(); }

std::vector<double> q_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi >= lo)) throw std::invalid_argument("q_grid: bad range");
  const auto count = static_cast<std::size_t>(std::llround((hi - lo) / step)) + 1;
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = lo + step * static_cast<double>(i);
  return out;
}

}  // namespace wchaos::systems
