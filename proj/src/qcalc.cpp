#include "wchaos/qcalc.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace wchaos::qcalc {

namespace {

// Largest argument for which exp() is finite.
constexpr double kMaxExpArg = 709.78;

}  // namespace

DeformParam::DeformParam(double q) : q_(q), log_base_(0.0) {
  if (!(q > 0.0 && q < 1.0)) {
    throw std::invalid_argument("entropic index q must lie in (0, 1), got " +
                                std::to_string(q));
  }
  log_base_ = std::log1p(1.0 - q);
}

Distribution::Distribution(std::vector<double> probabilities) : p_(std::move(probabilities)) {
  if (p_.empty()) throw std::invalid_argument("distribution must not be empty");
  double total = 0.0;
  for (double v : p_) {
    if (!std::isfinite(v) || v < 0.0) {
      throw std::invalid_argument("distribution entries must be finite and non-negative");
    }
    total += v;
  }
  if (std::abs(total - 1.0) > kNormTolerance) {
    throw std::invalid_argument("distribution sums to " + std::to_string(total) +
                                ", not 1 within 1e-12");
  }
}

Distribution product(const Distribution& a, const Distribution& b) {
  std::vector<double> joint;
  joint.reserve(a.size() * b.size());
  for (double pa : a.probabilities()) {
    for (double pb : b.probabilities()) joint.push_back(pa * pb);
  }
  return Distribution(std::move(joint));
}

double tau_q(const DeformParam& d, double x) {
  if (x == 1.0) return 1.0;  // ((2-q) - 1)/(1-q), exact where expm1(log1p(.)) may round
  const double arg = x * d.log_base();
  if (arg > kMaxExpArg) throw std::out_of_range("tau_q: (2-q)^x overflows");
  return std::expm1(arg) / d.strength();
}

double tau_q_inv(const DeformParam& d, double y) {
  const double scaled = d.strength() * y;
  if (!(scaled > -1.0)) {
    throw std::domain_error("tau_q_inv: argument must exceed -1/(1-q)");
  }
  if (scaled < -0.5) return std::log(std::fma(d.strength(), y, 1.0)) / d.log_base();
  return std::log1p(scaled) / d.log_base();
}

double deformed_distance(const DeformParam& d, double delta) {
  if (delta < 0.0) throw std::domain_error("deformed_distance: negative separation");
  return tau_q_inv(d, delta);
}

double log_deformed_distance(const DeformParam& d, double log_delta) {
  const double a = d.strength();
  double log_numer = 0.0;  // ln(log1p(a * delta))
  if (log_delta > 30.0) {
    // log1p(a e^L) = L + ln a + log1p(e^-L / a)
    log_numer = std::log(log_delta + std::log(a) + std::log1p(std::exp(-log_delta) / a));
  } else if (log_delta < -30.0) {
    // log1p(u) = u (1 - u/2 + ...), u = a e^L
    const double u = a * std::exp(log_delta);
    log_numer = log_delta + std::log(a) + std::log1p(-0.5 * u);
  } else {
    log_numer = std::log(std::log1p(a * std::exp(log_delta)));
  }
  return log_numer - std::log(d.log_base());
}

double q_exponential(const DeformParam& d, double x) {
  const double scaled = d.strength() * x;
  if (scaled <= -1.0) return 0.0;
  const double arg = std::log1p(scaled) / d.strength();
  if (arg > kMaxExpArg) return HUGE_VAL;
  return std::exp(arg);
}

double q_logarithm(const DeformParam& d, double x) {
  if (!(x > 0.0)) throw std::domain_error("q_logarithm: argument must be positive");
  return std::expm1(d.strength() * std::log(x)) / d.strength();
}

double tsallis_entropy(const DeformParam& d, const Distribution& p) {
  // 1 - sum p^q = (1 - sum p) - sum p (p^(q-1) - 1); the second sum uses expm1
  // so the q -> 1 limit keeps full precision.
  double norm_defect = 1.0;
  double deformed = 0.0;
  for (double pi : p.probabilities()) {
    norm_defect -= pi;
    if (pi > 0.0) deformed += pi * std::expm1(-d.strength() * std::log(pi));
  }
  return deformed / d.strength() - norm_defect / d.strength();
}

double tsallis_compose(const DeformParam& d, double sa, double sb) {
  if (sa < 0.0 || sb < 0.0) throw std::invalid_argument("tsallis_compose: negative entropy");
  return sa + sb + d.strength() * sa * sb;
}

}  // namespace wchaos::qcalc
