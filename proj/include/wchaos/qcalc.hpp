#pragma once

// q-deformed real calculus built on the Tsallis entropic index q in (0, 1).

#include <span>
#include <vector>

namespace wchaos::qcalc {

/// Entropic index q, restricted to the open interval (0, 1).
class DeformParam {
 public:
  /// Throws std::invalid_argument unless 0 < q < 1.
  explicit DeformParam(double q);

  double q() const noexcept { return q_; }
  /// 1 - q, the deformation strength.
  double strength() const noexcept { return 1.0 - q_; }
  /// ln(2 - q), computed as log1p(1 - q).
  double log_base() const noexcept { return log_base_; }

 private:
  double q_;
  double log_base_;
};

/// Probability vector: entries >= 0, summing to 1 within 1e-12.
class Distribution {
 public:
  static constexpr double kNormTolerance = 1e-12;

  /// Throws std::invalid_argument on empty input, negative or non-finite
  /// entries, or a sum further than kNormTolerance from 1.
  explicit Distribution(std::vector<double> probabilities);

  std::span<const double> probabilities() const noexcept { return p_; }
  std::size_t size() const noexcept { return p_.size(); }

 private:
  std::vector<double> p_;
};

/// Joint distribution of two independent variables, row-major (a outer).
Distribution product(const Distribution& a, const Distribution& b);

/// ((2-q)^x - 1)/(1-q). Throws std::out_of_range if the power overflows.
double tau_q(const DeformParam& d, double x);

/// ln(1 + (1-q) y)/ln(2-q). Throws std::domain_error for y <= -1/(1-q).
double tau_q_inv(const DeformParam& d, double y);

/// Separation re-measured on the Tsallis exponential scale: tau_q_inv(delta).
/// Throws std::domain_error for negative delta.
double deformed_distance(const DeformParam& d, double delta);

/// ln(deformed_distance(d, exp(log_delta))), evaluated without forming
/// exp(log_delta), so it stays finite for separations far outside the
/// double range.
double log_deformed_distance(const DeformParam& d, double log_delta);

/// [1 + (1-q) x]^(1/(1-q)) on its support, 0 where 1 + (1-q) x <= 0.
double q_exponential(const DeformParam& d, double x);

/// (x^(1-q) - 1)/(1-q). Throws std::domain_error for x <= 0.
double q_logarithm(const DeformParam& d, double x);

/// S_q = (1 - sum p_i^q)/(q - 1).
double tsallis_entropy(const DeformParam& d, const Distribution& p);

/// sa + sb + (1-q) sa sb. Throws std::invalid_argument for negative inputs.
double tsallis_compose(const DeformParam& d, double sa, double sb);

}  // namespace wchaos::qcalc
