#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>

#include "wchaos/expcli.hpp"
#include "wchaos/jacobi.hpp"
#include "wchaos/lyapunov.hpp"
#include "wchaos/qcalc.hpp"
#include "wchaos/random.hpp"
#include "wchaos/series.hpp"
#include "wchaos/spaceform.hpp"
#include "wchaos/systems.hpp"

namespace wchaos::expcli {

namespace {

namespace sf = wchaos::spaceform;

struct Outcome {
  Table series;
  std::vector<Estimate> estimates;
  std::vector<Check> checks;
};

using Runner = Outcome (*)(const RunConfig&);

struct Entry {
  ExperimentInfo info;
  Runner run;
};

void require(bool ok, const std::string& message) {
  if (!ok) throw ParameterError(message);
}

int to_int(std::int64_t v, const std::string& key) {
  require(v >= 0 && v <= 100000000, key + " is out of range");
  return static_cast<int>(v);
}

Check within(const std::string& name, double value, double target, double tolerance) {
  const double err = std::abs(value - target);
  return {name, err <= tolerance,
          "|" + format_real(value) + " - " + format_real(target) + "| = " + format_real(err) +
              " (limit " + format_real(tolerance) + ")"};
}

Check at_most(const std::string& name, double value, double limit) {
  return {name, value <= limit, format_real(value) + " <= " + format_real(limit)};
}

std::vector<double> deltas_of(const SeparationSeries& s) {
  std::vector<double> out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) out[i] = s.delta(i);
  return out;
}

std::vector<double> copy(std::span<const double> v) { return {v.begin(), v.end()}; }

// Unit-speed geodesic from the model origin along e_0, perturbed along e_1.
struct GeodesicSetup {
  sf::SpaceForm space;
  sf::PhaseState state;
  sf::Tangent direction;
};

GeodesicSetup geodesic_setup(double k) {
  sf::SpaceForm s(k);
  sf::PhaseState st = sf::make_phase_state(s, s.origin(), s.origin_basis(0));
  return {s, st, s.origin_basis(1)};
}

// --- curvature-defect ------------------------------------------------------

Outcome run_curvature_defect(const RunConfig& cfg) {
  const double k = cfg.real("K");
  const std::vector<double>& radii = cfg.list("radii");
  const int segments = to_int(cfg.integer("segments"), "segments");
  require(segments >= 64, "segments must be >= 64");
  require(!radii.empty(), "radii must not be empty");

  const sf::SpaceForm s(k);
  const sf::TangentFrame frame =
      sf::TangentFrame::orthonormalize(s, s.origin(), {s.origin_basis(0), s.origin_basis(1)});
  const auto samples = sf::circle_defect_samples(s, frame, radii, segments);
  const double estimate = sf::circle_defect_curvature(s, frame, radii, segments);

  Outcome o;
  Column r{"radius", {}}, len{"length", {}}, flat{"flat_length", {}}, est{"estimate", {}};
  std::vector<double> h;
  for (const auto& d : samples) {
    r.values.push_back(d.radius);
    len.values.push_back(d.length);
    flat.values.push_back(d.flat_length);
    est.values.push_back(d.estimate);
    h.push_back(d.radius * d.radius);
  }
  // Spread between the full extrapolation and the one without the largest
  // radius serves as the error indicator.
  double spread = 0.0;
  if (samples.size() > 1) {
    const std::span<const double> hs(h);
    const std::span<const double> es(est.values);
    spread = std::abs(estimate - sf::extrapolate_to_zero(hs.subspan(1), es.subspan(1)));
  }
  o.series.columns = {r, len, flat, est};
  o.estimates.push_back({"curvature", estimate, spread});
  o.checks.push_back(within("curvature-recovered", estimate, k, 1e-3));
  return o;
}

// --- jacobi-check ----------------------------------------------------------

double state_scale(double k, double value, double derivative) {
  const double w = k != 0.0 ? 1.0 / std::sqrt(std::abs(k)) : 1.0;
  return std::hypot(value, derivative * w);
}

Outcome run_jacobi_check(const RunConfig& cfg) {
  const double k = cfg.real("K");
  const double t_end = cfg.real("t");
  const double dt = cfg.real("dt");
  const int samples = to_int(cfg.integer("samples"), "samples");
  require(t_end > 0.0, "t must be positive");
  require(samples >= 1, "samples must be >= 1");
  require(dt > 0.0 && dt <= t_end / samples, "dt must lie in (0, t / samples]");

  const jacobi::JacobiState sn0{0.0, 1.0};
  const jacobi::JacobiState cs0{1.0, 0.0};
  std::vector<jacobi::JacobiState> states{sn0, cs0};
  const double w0 = jacobi::wronskian(cs0, sn0);
  const double interval = t_end / samples;

  Column t{"t", {}}, snc{"sn_closed", {}}, snn{"sn_numeric", {}}, csc{"cs_closed", {}},
      csn{"cs_numeric", {}}, rel{"rel_error", {}}, drift{"wronskian_drift", {}};
  double worst_rel = 0.0;
  double worst_drift = 0.0;
  const double w = k != 0.0 ? 1.0 / std::sqrt(std::abs(k)) : 1.0;
  for (int i = 1; i <= samples; ++i) {
    states = jacobi::jacobi_integrate_batch(k, states, interval, dt);
    const double ti = t_end * i / samples;
    const jacobi::JacobiState a = jacobi::jacobi_closed_state(k, sn0, ti);
    const jacobi::JacobiState b = jacobi::jacobi_closed_state(k, cs0, ti);
    const double ea = std::hypot(states[0].value - a.value, (states[0].derivative - a.derivative) * w) /
                      state_scale(k, a.value, a.derivative);
    const double eb = std::hypot(states[1].value - b.value, (states[1].derivative - b.derivative) * w) /
                      state_scale(k, b.value, b.derivative);
    const double e = std::max(ea, eb);
    const double wr = jacobi::wronskian(states[1], states[0]);
    const double size = std::abs(states[1].value * states[0].derivative) +
                        std::abs(states[0].value * states[1].derivative);
    const double d = std::abs(wr - w0) / std::max(1.0, size);
    worst_rel = std::max(worst_rel, e);
    worst_drift = std::max(worst_drift, d);
    t.values.push_back(ti);
    snc.values.push_back(a.value);
    snn.values.push_back(states[0].value);
    csc.values.push_back(b.value);
    csn.values.push_back(states[1].value);
    rel.values.push_back(e);
    drift.values.push_back(d);
  }

  Outcome o;
  o.series.columns = {t, snc, snn, csc, csn, rel, drift};
  o.estimates.push_back({"max_rel_error", worst_rel, 0.0});
  o.estimates.push_back({"max_wronskian_drift", worst_drift, 0.0});
  o.checks.push_back(at_most("closed-form-agreement", worst_rel, 1e-8));
  o.checks.push_back(at_most("wronskian-conserved", worst_drift, 1e-9));
  return o;
}

// --- geodesic-lyapunov -----------------------------------------------------

Outcome run_geodesic_lyapunov(const RunConfig& cfg) {
  const double k = cfg.real("K");
  const double horizon = cfg.real("T");
  const int samples = to_int(cfg.integer("samples"), "samples");
  const double dt = cfg.real("dt");
  const int renorm = to_int(cfg.integer("renorm_every"), "renorm_every");
  require(k < 0.0, "geodesic-lyapunov needs K < 0");
  require(horizon > 0.0 && samples >= 100, "need T > 0 and samples >= 100");
  require(dt > 0.0 && dt < horizon, "dt must lie in (0, T)");
  require(renorm >= 1, "renorm_every must be >= 1");

  const GeodesicSetup g = geodesic_setup(k);
  const SeparationSeries series =
      systems::geodesic_separation_series(g.space, g.state, g.direction, horizon, samples);
  const auto standard = lyapunov::standard_lyapunov(series);
  const auto benettin = lyapunov::benettin_flow_exponent(k, {0.0, 1.0}, horizon, dt, renorm);
  const double expected = std::sqrt(-k);

  Outcome o;
  o.series.columns = {{"t", copy(series.times())},
                      {"delta", deltas_of(series)},
                      {"ln_delta", copy(series.log_deltas())}};
  o.estimates.push_back({"standard", standard.value, standard.std_error});
  o.estimates.push_back({"benettin", benettin.value, benettin.std_error});
  o.estimates.push_back({"sqrt_neg_K", expected, 0.0});
  o.checks.push_back(within("standard-matches-sqrt(-K)", standard.value, expected, 0.02 * expected));
  o.checks.push_back(within("benettin-matches-sqrt(-K)", benettin.value, expected, 0.02 * expected));
  return o;
}

// --- deformed-lyapunov -----------------------------------------------------

Outcome run_deformed_lyapunov(const RunConfig& cfg) {
  const double k = cfg.real("K");
  const double q = cfg.real("q");
  const double horizon = cfg.real("T");
  const int samples = to_int(cfg.integer("samples"), "samples");
  const double rate = cfg.real("double_exp_rate");
  require(k < 0.0, "deformed-lyapunov needs K < 0");
  require(q > 0.0 && q < 1.0, "q must lie in (0, 1)");
  require(horizon > 0.0 && samples >= 100, "need T > 0 and samples >= 100");
  require(rate > 0.0, "double_exp_rate must be positive");

  const qcalc::DeformParam d(q);
  const GeodesicSetup g = geodesic_setup(k);
  const SeparationSeries series =
      systems::geodesic_separation_series(g.space, g.state, g.direction, horizon, samples);
  const SeparationSeries deformed = lyapunov::deform_series(d, series);
  const auto standard = lyapunov::standard_lyapunov(series);
  const auto full = lyapunov::deformed_lyapunov(d, series);
  const auto half = lyapunov::deformed_lyapunov(d, series.slice(0, series.size() / 2));
  const auto modified = lyapunov::modified_lyapunov(deformed);
  const auto growth = jacobi::classify_separation(deformed);

  // Separation growing like exp(exp(rate t)) on the same time grid.
  std::vector<double> logs(series.size());
  for (std::size_t i = 0; i < logs.size(); ++i) logs[i] = std::exp(rate * series.time(i));
  const auto dbl = lyapunov::deformed_lyapunov(
      d, SeparationSeries::from_log_deltas(copy(series.times()), std::move(logs)));

  const double expected = std::sqrt(-k);
  Outcome o;
  o.series.columns = {{"t", copy(series.times())},
                      {"delta", deltas_of(series)},
                      {"delta_deformed", deltas_of(deformed)},
                      {"ln_delta", copy(series.log_deltas())},
                      {"ln_delta_deformed", copy(deformed.log_deltas())}};
  o.estimates.push_back({"standard", standard.value, standard.std_error});
  o.estimates.push_back({"deformed", full.value, full.std_error});
  o.estimates.push_back({"deformed_half_horizon", half.value, half.std_error});
  o.estimates.push_back({"modified_of_deformed", modified.value, modified.std_error});
  o.estimates.push_back({"double_exp_deformed", dbl.value, dbl.std_error});
  o.checks.push_back(within("standard-matches-sqrt(-K)", standard.value, expected, 0.02 * expected));
  o.checks.push_back(at_most("deformed-vanishes", std::abs(full.value), 0.05));
  o.checks.push_back({"deformed-decreases-with-T", std::abs(full.value) < std::abs(half.value),
                      format_real(std::abs(full.value)) + " < " + format_real(std::abs(half.value))});
  o.checks.push_back(within("deformed-grows-linearly", modified.value, 1.0, 0.1));
  o.checks.push_back({"deformed-classified-linear", growth.kind == jacobi::GrowthKind::Linear,
                      jacobi::to_string(growth.kind)});
  o.checks.push_back(within("double-exponential-rate", dbl.value, rate, 0.1 * rate));
  return o;
}

// --- modified-exponent -----------------------------------------------------

Outcome run_modified_exponent(const RunConfig& cfg) {
  const double horizon = cfg.real("T");
  const int samples = to_int(cfg.integer("samples"), "samples");
  const double degree = cfg.real("degree");
  require(horizon > 0.0 && samples >= 100, "need T > 0 and samples >= 100");
  require(degree > 0.0, "degree must be positive");

  const GeodesicSetup g = geodesic_setup(0.0);
  const SeparationSeries flat =
      systems::geodesic_separation_series(g.space, g.state, g.direction, horizon, samples);
  std::vector<double> logs(flat.size());
  for (std::size_t i = 0; i < logs.size(); ++i) logs[i] = degree * std::log(flat.time(i));
  const SeparationSeries power = SeparationSeries::from_log_deltas(copy(flat.times()), logs);

  const auto flat_mod = lyapunov::modified_lyapunov(flat);
  const auto flat_std = lyapunov::standard_lyapunov(flat);
  const auto power_mod = lyapunov::modified_lyapunov(power);
  const auto flat_class = jacobi::classify_separation(flat);
  const auto power_class = jacobi::classify_separation(power);
  const auto expected_class =
      std::abs(degree - 1.0) <= 0.1 ? jacobi::GrowthKind::Linear : jacobi::GrowthKind::Polynomial;

  Outcome o;
  o.series.columns = {{"t", copy(flat.times())},
                      {"delta", deltas_of(flat)},
                      {"delta_power", deltas_of(power)}};
  o.estimates.push_back({"flat_modified", flat_mod.value, flat_mod.std_error});
  o.estimates.push_back({"flat_standard", flat_std.value, flat_std.std_error});
  o.estimates.push_back({"power_modified", power_mod.value, power_mod.std_error});
  o.checks.push_back(within("flat-degree-one", flat_mod.value, 1.0, 0.1));
  o.checks.push_back({"flat-classified-linear", flat_class.kind == jacobi::GrowthKind::Linear,
                      jacobi::to_string(flat_class.kind)});
  o.checks.push_back(within("power-degree-recovered", power_mod.value, degree, 0.01 * degree));
  o.checks.push_back({"power-classified", power_class.kind == expected_class,
                      jacobi::to_string(power_class.kind)});
  return o;
}

// --- anosov ----------------------------------------------------------------

Outcome run_anosov(const RunConfig& cfg) {
  const int samples = to_int(cfg.integer("samples"), "samples");
  const int t_max = to_int(cfg.integer("t_max"), "t_max");
  const double tol = cfg.real("tol");
  const std::int64_t iterates = cfg.integer("iterates");
  require(samples >= 100, "samples must be >= 100");
  require(t_max >= 10, "t_max must be >= 10");
  require(tol > 0.0 && tol < 1.0, "tol must lie in (0, 1)");
  require(iterates >= 10000 && iterates <= 100000000, "iterates must lie in [1e4, 1e8]");

  const systems::AnosovReport report = systems::anosov_verify(samples, t_max, tol, cfg.seed);
  const systems::TorusMatrix m;
  const lyapunov::Matrix2 jac{{{double(m.a), double(m.b)}, {double(m.c), double(m.d)}}};
  lyapunov::SpectrumAccumulator acc;
  for (std::int64_t i = 0; i < iterates; ++i) acc.push(jac);
  const auto [chi1, chi2] = acc.exponents();
  const double ln_mu = std::log(report.expansion_rate);

  Outcome o;
  Column t{"t", {}};
  for (int i = 1; i <= t_max; ++i) t.values.push_back(i);
  o.series.columns = {t, {"stable_ratio", report.stable_ratio},
                      {"unstable_ratio", report.unstable_ratio}};
  o.estimates.push_back({"expansion_rate", report.expansion_rate, 0.0});
  o.estimates.push_back({"contraction_rate", report.contraction_rate, 0.0});
  o.estimates.push_back({"constant", report.constant, 0.0});
  o.estimates.push_back({"chi_1", chi1, 0.0});
  o.estimates.push_back({"chi_2", chi2, 0.0});
  o.estimates.push_back({"chi_sum", chi1 + chi2, 0.0});
  for (const auto& c : report.checks) {
    if (c.applicable) o.checks.push_back({c.name, c.passed, c.detail + ": " + format_real(c.measured)});
  }
  o.checks.push_back(within("chi_1", chi1, ln_mu, 1e-4));
  o.checks.push_back(within("chi_2", chi2, -ln_mu, 1e-4));
  o.checks.push_back(at_most("exponent-sum", std::abs(chi1 + chi2), 1e-8));
  return o;
}

// --- logistic-edge ---------------------------------------------------------

struct EnsembleRate {
  double mean = 0.0;
  double std_error = 0.0;
};

EnsembleRate ensemble_exponent(double a, std::span<const double> starts, std::int64_t n) {
  std::vector<double> rates;
  double fit_error = 0.0;
  for (double x0 : starts) {
    const auto s = systems::logistic_sensitivity_series(systems::LogisticParams(a), x0, n);
    if (s.series.size() < lyapunov::kMinSeriesSamples) continue;
    const auto e = lyapunov::standard_lyapunov(s.series);
    rates.push_back(e.value);
    fit_error = e.std_error;
  }
  if (rates.empty()) throw std::domain_error("logistic-edge: every orbit hit the critical point");
  EnsembleRate r;
  for (double v : rates) r.mean += v;
  r.mean /= static_cast<double>(rates.size());
  if (rates.size() == 1) {
    r.std_error = fit_error;
    return r;
  }
  double ss = 0.0;
  for (double v : rates) ss += (v - r.mean) * (v - r.mean);
  const auto m = static_cast<double>(rates.size());
  r.std_error = std::sqrt(ss / (m - 1.0) / m);
  return r;
}

Outcome run_logistic_edge(const RunConfig& cfg) {
  const std::int64_t n_chaotic = cfg.integer("N_chaotic");
  const std::int64_t n = cfg.integer("N");
  const double x0 = cfg.real("x0");
  const std::int64_t members = cfg.integer("ensemble");
  const double q_lo = cfg.real("q_lo");
  const double q_hi = cfg.real("q_hi");
  const double q_step = cfg.real("q_step");
  require(n_chaotic >= 1000 && n_chaotic <= 100000000, "N_chaotic must lie in [1000, 1e8]");
  require(n >= 1000 && n <= 100000000, "N must lie in [1000, 1e8]");
  require(x0 > -1.0 && x0 < 1.0, "x0 must lie in (-1, 1)");
  require(members >= 1 && members <= 1000, "ensemble must lie in [1, 1000]");
  require(q_lo > 0.0 && q_hi < 1.0 && q_step > 0.0 && q_lo < q_hi,
          "q grid must satisfy 0 < q_lo < q_hi < 1 and q_step > 0");
  const std::vector<double> grid = systems::q_grid(q_lo, q_hi, q_step);
  require(grid.size() >= 20 && grid.back() < 1.0, "q grid needs >= 20 values inside (0, 1)");

  // Initial conditions: x0 followed by a shifted golden-ratio sequence on (-1, 1).
  std::vector<double> starts{x0};
  const double shift = CounterRng(cfg.seed).uniform();
  for (std::int64_t k = 1; k < members; ++k) {
    starts.push_back(-1.0 + 2.0 * golden_sequence(static_cast<std::uint64_t>(k), shift));
  }

  const double a_inf = systems::edge_of_chaos_param();
  const EnsembleRate chaotic = ensemble_exponent(2.0, starts, n_chaotic);
  const EnsembleRate edge = ensemble_exponent(a_inf, starts, n);

  const systems::LogisticParams edge_params(a_inf);
  const auto critical = systems::logistic_sensitivity_series(
      edge_params, systems::critical_orbit_start(edge_params), n);
  const systems::QSensitivityFit fit = systems::q_sensitivity_fit(critical.series, grid);

  Outcome o;
  o.series.columns = {{"t", copy(critical.series.times())},
                      {"delta", deltas_of(critical.series)},
                      {"ln_delta", copy(critical.series.log_deltas())}};
  o.estimates.push_back({"a_inf", a_inf, 0.0});
  o.estimates.push_back({"lambda_chaotic", chaotic.mean, chaotic.std_error});
  o.estimates.push_back({"lambda_edge", edge.mean, edge.std_error});
  o.estimates.push_back({"q_sen", fit.q_sen, q_step});
  o.estimates.push_back({"lambda_q", fit.lambda_q, 0.0});
  o.estimates.push_back({"fit_quality", fit.fit_quality, 0.0});
  o.estimates.push_back({"envelope_points", static_cast<double>(fit.envelope_points), 0.0});
  o.checks.push_back(within("chaotic-exponent-ln2", chaotic.mean, std::numbers::ln2, 0.01));
  o.checks.push_back(at_most("edge-exponent-vanishes", std::abs(edge.mean), 0.01));
  o.checks.push_back({"q_sen-band", fit.q_sen >= 0.15 && fit.q_sen <= 0.35,
                      format_real(fit.q_sen) + " in [0.15, 0.35]"});
  o.checks.push_back({"q_sen-interior", !fit.degraded, "best q is not on a grid edge"});
  return o;
}

// --- entropy-compose -------------------------------------------------------

qcalc::Distribution random_distribution(CounterRng& rng, int outcomes) {
  std::vector<double> w(static_cast<std::size_t>(outcomes));
  double total = 0.0;
  for (double& v : w) {
    v = 1.0 - rng.uniform();
    total += v;
  }
  for (double& v : w) v /= total;
  return qcalc::Distribution(std::move(w));
}

Outcome run_entropy_compose(const RunConfig& cfg) {
  const double q = cfg.real("q");
  const int max_outcomes = to_int(cfg.integer("max_outcomes"), "max_outcomes");
  const int trials = to_int(cfg.integer("trials"), "trials");
  require(q > 0.0 && q < 1.0, "q must lie in (0, 1)");
  require(max_outcomes >= 1 && max_outcomes <= 64, "max_outcomes must lie in [1, 64]");
  require(trials >= 1, "trials must be >= 1");

  const qcalc::DeformParam d(q);
  CounterRng rng(cfg.seed);
  Column trial{"trial", {}}, na{"outcomes_a", {}}, nb{"outcomes_b", {}}, sa{"s_a", {}},
      sb{"s_b", {}}, sj{"s_joint", {}}, sc{"s_composed", {}}, err{"abs_error", {}};
  double worst = 0.0;
  for (int i = 0; i < trials; ++i) {
    const int size_a = 1 + static_cast<int>(rng.uniform() * max_outcomes);
    const int size_b = 1 + static_cast<int>(rng.uniform() * max_outcomes);
    const qcalc::Distribution a = random_distribution(rng, size_a);
    const qcalc::Distribution b = random_distribution(rng, size_b);
    const double ea = qcalc::tsallis_entropy(d, a);
    const double eb = qcalc::tsallis_entropy(d, b);
    const double joint = qcalc::tsallis_entropy(d, qcalc::product(a, b));
    const double composed = qcalc::tsallis_compose(d, ea, eb);
    const double e = std::abs(joint - composed);
    worst = std::max(worst, e);
    trial.values.push_back(i);
    na.values.push_back(size_a);
    nb.values.push_back(size_b);
    sa.values.push_back(ea);
    sb.values.push_back(eb);
    sj.values.push_back(joint);
    sc.values.push_back(composed);
    err.values.push_back(e);
  }

  Outcome o;
  o.series.columns = {trial, na, nb, sa, sb, sj, sc, err};
  o.estimates.push_back({"max_abs_error", worst, 0.0});
  o.checks.push_back(at_most("composition-identity", worst, 1e-12));
  return o;
}

// --- registry --------------------------------------------------------------

const std::vector<Entry>& registry() {
  using T = ParamType;
  static const std::vector<Entry> entries{
      {{"curvature-defect",
        "sectional curvature from the length defect of small geodesic circles",
        {{"K", T::Real, "-1", "curvature of the space form"},
         {"radii", T::RealList, "0.1,0.05,0.025", "circle radii, strictly decreasing"},
         {"segments", T::Integer, "512", "polygon segments per circle"}}},
       run_curvature_defect},
      {{"jacobi-check", "RK4 Jacobi fields against the closed form, with Wronskian drift",
        {{"K", T::Real, "-1", "curvature"},
         {"t", T::Real, "10", "final time"},
         {"dt", T::Real, "1e-3", "integration step"},
         {"samples", T::Integer, "100", "output rows"}}},
       run_jacobi_check},
      {{"geodesic-lyapunov", "standard and Benettin exponents of the geodesic flow for K < 0",
        {{"K", T::Real, "-1", "curvature, must be negative"},
         {"T", T::Real, "30", "time horizon"},
         {"samples", T::Integer, "3000", "separation samples"},
         {"dt", T::Real, "1e-3", "Benettin integration step"},
         {"renorm_every", T::Integer, "10", "steps between Benettin renormalizations"}}},
       run_geodesic_lyapunov},
      {{"deformed-lyapunov", "exponent of the q-deformed separation on a hyperbolic flow",
        {{"K", T::Real, "-1", "curvature, must be negative"},
         {"q", T::Real, "0.5", "entropic index in (0, 1)"},
         {"T", T::Real, "60", "time horizon"},
         {"samples", T::Integer, "6000", "separation samples"},
         {"double_exp_rate", T::Real, "0.1", "rate r of the synthetic exp(exp(r t)) check"}}},
       run_deformed_lyapunov},
      {{"modified-exponent", "power-law growth degree on the flat plane and synthetic data",
        {{"T", T::Real, "30", "time horizon"},
         {"samples", T::Integer, "3000", "separation samples"},
         {"degree", T::Real, "2", "degree of the synthetic power law"}}},
       run_modified_exponent},
      {{"anosov", "Anosov properties and Lyapunov spectrum of the cat map",
        {{"samples", T::Integer, "100", "random base points"},
         {"t_max", T::Integer, "30", "largest iterate checked"},
         {"tol", T::Real, "1e-9", "tolerance of the checks"},
         {"iterates", T::Integer, "1000000", "tangent products for the spectrum"}}},
       run_anosov},
      {{"logistic-edge", "x -> 1 - a x^2: ln 2 at a = 2, weak chaos and q_sen at a_inf",
        {{"N_chaotic", T::Integer, "1000000", "iterations at a = 2"},
         {"N", T::Integer, "100000", "iterations at a_inf"},
         {"x0", T::Real, "0.2", "first initial condition"},
         {"ensemble", T::Integer, "4", "initial conditions averaged"},
         {"q_lo", T::Real, "0.01", "smallest q of the fit grid"},
         {"q_hi", T::Real, "0.99", "largest q of the fit grid"},
         {"q_step", T::Real, "0.01", "q grid spacing"}}},
       run_logistic_edge},
      {{"entropy-compose", "Tsallis pseudo-additivity on random independent pairs",
        {{"q", T::Real, "0.5", "entropic index in (0, 1)"},
         {"max_outcomes", T::Integer, "8", "largest alphabet per factor"},
         {"trials", T::Integer, "64", "random pairs"}}},
       run_entropy_compose},
  };
  return entries;
}

const Entry& find_entry(const std::string& name) {
  for (const Entry& e : registry()) {
    if (e.info.name == name) return e;
  }
  throw UsageError("unknown experiment '" + name + "' (see `list`)");
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw OutputError("cannot open " + path.string() + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.flush();
  if (!out) throw OutputError("write to " + path.string() + " failed");
}

}  // namespace

const std::vector<ExperimentInfo>& experiments() {
  static const std::vector<ExperimentInfo> infos = [] {
    std::vector<ExperimentInfo> v;
    for (const Entry& e : registry()) v.push_back(e.info);
    return v;
  }();
  return infos;
}

const ExperimentInfo& find_experiment(const std::string& name) { return find_entry(name).info; }

RunSummary run_experiment(const RunConfig& cfg) {
  const Entry& entry = find_entry(cfg.experiment);
  for (const ParamSpec& p : entry.info.params) {
    if (!cfg.params.contains(p.name)) throw UsageError("missing parameter " + p.name);
  }

  std::error_code ec;
  std::filesystem::create_directories(cfg.output_dir, ec);
  if (ec || !std::filesystem::is_directory(cfg.output_dir)) {
    throw OutputError("cannot create output directory " + cfg.output_dir.string());
  }

  const auto start = std::chrono::steady_clock::now();
  Outcome outcome = entry.run(cfg);
  const auto stop = std::chrono::steady_clock::now();

  RunSummary s;
  s.experiment = cfg.experiment;
  s.config = cfg;
  s.estimates = std::move(outcome.estimates);
  s.checks = std::move(outcome.checks);
  s.pass = std::all_of(s.checks.begin(), s.checks.end(), [](const Check& c) { return c.passed; });
  s.duration_seconds = std::chrono::duration<double>(stop - start).count();

  const auto series_path = cfg.output_dir / (cfg.experiment + "_series.csv");
  const auto estimates_path = cfg.output_dir / (cfg.experiment + "_estimates.csv");
  const auto summary_path = cfg.output_dir / (cfg.experiment + "_summary.json");
  s.outputs = {series_path, estimates_path, summary_path};
  emit_table(outcome.series, series_path);
  emit_estimates(s.estimates, estimates_path);
  write_text(summary_path, summary_json(s));
  return s;
}

}  // namespace wchaos::expcli
