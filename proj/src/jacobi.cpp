#include "wchaos/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wchaos/kernels.hpp"
#include "wchaos/regression.hpp"

namespace wchaos::jacobi {

namespace {

constexpr std::size_t kMinClassifySamples = 50;
constexpr double kBoundedVariation = 0.01;
constexpr double kLinearDegreeBand = 0.1;

// Generalized sine/cosine of the constant-curvature Jacobi equation.
struct SnCs {
  double sn;     // solution with J(0)=0, J'(0)=1
  double cs;     // solution with J(0)=1, J'(0)=0
  double d_sn;   // derivative of sn
  double d_cs;   // derivative of cs
};

SnCs sn_cs(double k, double t) {
  if (k < 0.0) {
    const double a = std::sqrt(-k);
    const double ch = std::cosh(a * t);
    const double sh = std::sinh(a * t);
    return {sh / a, ch, ch, a * sh};
  }
  if (k > 0.0) {
    const double a = std::sqrt(k);
    const double c = std::cos(a * t);
    const double s = std::sin(a * t);
    return {s / a, c, c, -a * s};
  }
  return {t, 1.0, 1.0, 0.0};
}

}  // namespace

std::vector<double> jacobi_closed_form(double curvature, const JacobiCoeffs& c, double t) {
  if (c.a.size() != c.b.size()) {
    throw std::invalid_argument("jacobi coefficients: a and b differ in length");
  }
  if (!(t >= 0.0)) throw std::invalid_argument("jacobi_closed_form: t must be >= 0");
  const SnCs f = sn_cs(curvature, t);
  std::vector<double> out(c.a.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = c.a[i] * f.cs + c.b[i] * f.sn;
  return out;
}

JacobiState jacobi_closed_state(double curvature, const JacobiState& init, double t) {
  const SnCs f = sn_cs(curvature, t);
  return {init.value * f.cs + init.derivative * f.sn,
          init.value * f.d_cs + init.derivative * f.d_sn};
}

std::vector<JacobiState> jacobi_integrate_batch(double curvature,
                                                std::span<const JacobiState> init, double t,
                                                double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("jacobi_integrate: dt must be positive");
  if (!(t >= 0.0)) throw std::invalid_argument("jacobi_integrate: t must be >= 0");
  std::vector<double> value(init.size()), rate(init.size());
  for (std::size_t i = 0; i < init.size(); ++i) {
    value[i] = init[i].value;
    rate[i] = init[i].derivative;
  }
  const auto full = static_cast<std::size_t>(std::floor(t / dt * (1.0 + 1e-12)));
  kernels::oscillator_rk4(value, rate, curvature, dt, full);
  const double rest = t - static_cast<double>(full) * dt;
  if (rest > 1e-12 * dt) kernels::oscillator_rk4(value, rate, curvature, rest, 1);

  std::vector<JacobiState> out(init.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = {value[i], rate[i]};
  return out;
}

JacobiState jacobi_integrate(double curvature, const JacobiState& init, double t, double dt) {
  return jacobi_integrate_batch(curvature, std::span<const JacobiState>(&init, 1), t, dt)[0];
}

double wronskian(const JacobiState& j1, const JacobiState& j2) noexcept {
  return j1.value * j2.derivative - j2.value * j1.derivative;
}

GrowthClass classify_separation(const SeparationSeries& series) {
  if (series.size() < kMinClassifySamples) {
    throw std::invalid_argument("classify_separation: need at least 50 samples");
  }
  const std::size_t first = series.size() / 2;
  const SeparationSeries tail = series.slice(first, series.size() - first);
  if (!(tail.time(0) > 0.0)) {
    throw std::invalid_argument("classify_separation: tail times must be positive");
  }

  // Bounded: tail variation below 1% of the mean, evaluated relative to the
  // tail maximum so huge separations do not overflow.
  const auto logs = tail.log_deltas();
  const double lmax = *std::max_element(logs.begin(), logs.end());
  const double lmin = *std::min_element(logs.begin(), logs.end());
  double mean = 0.0;
  for (double l : logs) mean += std::exp(l - lmax);
  mean /= static_cast<double>(logs.size());
  if ((1.0 - std::exp(lmin - lmax)) < kBoundedVariation * mean) {
    return GrowthClass{GrowthKind::Bounded, 0.0, 0.0, 0.0};
  }

  std::vector<double> log_t(tail.size());
  for (std::size_t i = 0; i < tail.size(); ++i) log_t[i] = std::log(tail.time(i));
  const LinearFit expo = fit_line(tail.times(), logs);
  const LinearFit power = fit_line(log_t, logs);

  GrowthClass out;
  out.rss_exponential = expo.rss;
  out.rss_polynomial = power.rss;
  if (expo.rss == power.rss) {
    throw std::domain_error("classify_separation: exponential and power-law fits tie");
  }
  if (expo.rss < power.rss) {
    out.kind = GrowthKind::Exponential;
    out.parameter = expo.slope;
  } else {
    out.parameter = power.slope;
    out.kind = std::abs(power.slope - 1.0) <= kLinearDegreeBand ? GrowthKind::Linear
                                                               : GrowthKind::Polynomial;
  }
  return out;
}

const char* to_string(GrowthKind kind) noexcept {
  switch (kind) {
    case GrowthKind::Bounded:
      return "bounded";
    case GrowthKind::Linear:
      return "linear";
    case GrowthKind::Polynomial:
      return "polynomial";
    case GrowthKind::Exponential:
      return "exponential";
  }
  return "unknown";
}

}  // namespace wchaos::jacobi
