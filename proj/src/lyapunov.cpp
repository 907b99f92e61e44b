#include "wchaos/lyapunov.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "wchaos/regression.hpp"

namespace wchaos::lyapunov {

namespace {

SeparationSeries tail_window(const SeparationSeries& series, double tail_fraction) {
  if (!(tail_fraction > 0.0 && tail_fraction <= 1.0)) {
    throw std::invalid_argument("tail_fraction must lie in (0, 1]");
  }
  if (series.size() < kMinSeriesSamples) {
    throw std::invalid_argument("separation series needs at least 50 samples, got " +
                                std::to_string(series.size()));
  }
  const auto n = series.size();
  auto count = static_cast<std::size_t>(std::ceil(tail_fraction * static_cast<double>(n)));
  count = std::min(count, n);
  if (count < kMinWindowSamples) {
    throw std::invalid_argument("estimation window has fewer than 10 samples");
  }
  return series.slice(n - count, count);
}

ExponentEstimate from_fit(const LinearFit& fit, const SeparationSeries& window, Method m) {
  ExponentEstimate e;
  e.value = fit.slope;
  e.std_error = fit.slope_stderr;
  e.t_lo = window.time(0);
  e.t_hi = window.time(window.size() - 1);
  e.method = m;
  return e;
}

}  // namespace

ExponentEstimate standard_lyapunov(const SeparationSeries& series, double tail_fraction) {
  const SeparationSeries window = tail_window(series, tail_fraction);
  return from_fit(fit_line(window.times(), window.log_deltas()), window, Method::Standard);
}

ExponentEstimate modified_lyapunov(const SeparationSeries& series, double tail_fraction) {
  const SeparationSeries window = tail_window(series, tail_fraction);
  if (!(window.time(0) > 0.0)) {
    throw std::invalid_argument("modified_lyapunov: window times must be positive");
  }
  std::vector<double> log_t(window.size());
  for (std::size_t i = 0; i < window.size(); ++i) log_t[i] = std::log(window.time(i));
  return from_fit(fit_line(log_t, window.log_deltas()), window, Method::Modified);
}

SeparationSeries deform_series(const qcalc::DeformParam& q, const SeparationSeries& series) {
  std::vector<double> logs(series.size());
  for (std::size_t i = 0; i < series.size(); ++i) {
    logs[i] = qcalc::log_deformed_distance(q, series.log_delta(i));
  }
  return SeparationSeries::from_log_deltas({series.times().begin(), series.times().end()},
                                           std::move(logs));
}

ExponentEstimate deformed_lyapunov(const qcalc::DeformParam& q, const SeparationSeries& series,
                                   double tail_fraction) {
  ExponentEstimate e = standard_lyapunov(deform_series(q, series), tail_fraction);
  e.method = Method::Deformed;
  e.q = q.q();
  return e;
}

ExponentEstimate benettin_flow_exponent(double curvature, const jacobi::JacobiState& init,
                                        double horizon, double dt, int renorm_every) {
  if (!(horizon > 0.0)) throw std::invalid_argument("benettin: horizon must be positive");
  if (!(dt > 0.0)) throw std::invalid_argument("benettin: dt must be positive");
  if (renorm_every < 1) throw std::invalid_argument("benettin: renorm_every must be >= 1");
  const double norm0 = std::hypot(init.value, init.derivative);
  if (!(norm0 > 0.0)) throw std::invalid_argument("benettin: zero initial tangent vector");

  const auto total = static_cast<std::size_t>(std::llround(horizon / dt));
  if (total == 0) throw std::invalid_argument("benettin: horizon shorter than one step");
  const auto block = static_cast<std::size_t>(renorm_every);
  const double block_time = static_cast<double>(block) * dt;

  jacobi::JacobiState state{init.value / norm0, init.derivative / norm0};
  double log_sum = 0.0;
  double rate_sum = 0.0;
  double rate_sq_sum = 0.0;
  std::size_t blocks = 0;
  for (std::size_t done = 0; done < total; done += block) {
    const std::size_t steps = std::min(block, total - done);
    state = jacobi::jacobi_integrate(curvature, state, static_cast<double>(steps) * dt, dt);
    const double r = std::hypot(state.value, state.derivative);
    const double lr = std::log(r);
    log_sum += lr;
    state.value /= r;
    state.derivative /= r;
    if (steps == block) {
      const double rate = lr / block_time;
      rate_sum += rate;
      rate_sq_sum += rate * rate;
      ++blocks;
    }
  }

  ExponentEstimate e;
  const double elapsed = static_cast<double>(total) * dt;
  e.value = log_sum / elapsed;
  if (blocks > 1) {
    const double nb = static_cast<double>(blocks);
    const double mean = rate_sum / nb;
    const double var = std::max(0.0, (rate_sq_sum - nb * mean * mean) / (nb - 1.0));
    e.std_error = std::sqrt(var / nb);
  }
  e.t_lo = 0.0;
  e.t_hi = elapsed;
  e.method = Method::Standard;
  return e;
}

void SpectrumAccumulator::push(const Matrix2& m) {
  const double det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  if (!(std::abs(det) >= kSingularDet)) {
    throw std::domain_error("map_lyapunov_spectrum: singular Jacobian at step " +
                            std::to_string(steps_) + " (det=" + std::to_string(det) + ")");
  }
  std::array<double, 2> a{m[0][0] * u_[0] + m[0][1] * u_[1], m[1][0] * u_[0] + m[1][1] * u_[1]};
  std::array<double, 2> b{m[0][0] * w_[0] + m[0][1] * w_[1], m[1][0] * w_[0] + m[1][1] * w_[1]};
  const double ra = std::hypot(a[0], a[1]);
  a = {a[0] / ra, a[1] / ra};
  const double proj = b[0] * a[0] + b[1] * a[1];
  b = {b[0] - proj * a[0], b[1] - proj * a[1]};
  const double rb = std::hypot(b[0], b[1]);
  b = {b[0] / rb, b[1] / rb};
  u_ = a;
  w_ = b;
  log_sum_u_ += std::log(ra);
  log_sum_w_ += std::log(rb);
  ++steps_;
}

std::pair<double, double> SpectrumAccumulator::exponents() const {
  if (steps_ < kMinSteps) {
    throw std::invalid_argument("map_lyapunov_spectrum: need at least 10^4 Jacobians");
  }
  const auto n = static_cast<double>(steps_);
  double first = log_sum_u_ / n;
  double second = log_sum_w_ / n;
  if (second > first) std::swap(first, second);
  return {first, second};
}

std::pair<double, double> map_lyapunov_spectrum(std::span<const Matrix2> jacobians) {
  SpectrumAccumulator acc;
  for (const Matrix2& m : jacobians) acc.push(m);
  return acc.exponents();
}

const char* to_string(Method m) noexcept {
  switch (m) {
    case Method::Standard:
      return "standard";
    case Method::Modified:
      return "modified";
    case Method::Deformed:
      return "deformed";
  }
  return "unknown";
}

}  // namespace wchaos::lyapunov
