#pragma once

// Simply connected constant-curvature model geometries in embedded form:
//   K < 0  upper sheet of the hyperboloid <x,x> = 1/K in Minkowski space
//          R^{1,n}, with <u,v> = -u0 v0 + sum_i u_i v_i,
//   K = 0  affine R^n,
//   K > 0  round sphere |x|^2 = 1/K in R^{n+1}.
// Tangent vectors at x satisfy <x,v> = 0 and carry the restricted form.

#include <cstddef>
#include <span>
#include <vector>

namespace wchaos::spaceform {

enum class Model { Hyperbolic, Euclidean, Spherical };

struct Point {
  std::vector<double> coords;
};

struct Tangent {
  std::vector<double> coords;
};

class SpaceForm {
 public:
  /// Throws std::invalid_argument for non-finite K or dimension < 2.
  explicit SpaceForm(double curvature, int dimension = 2);

  double curvature() const noexcept { return curvature_; }
  int dimension() const noexcept { return dimension_; }
  Model model() const noexcept { return model_; }
  /// n + 1 for the curved models, n for the flat one.
  std::size_t ambient_dim() const noexcept;

  /// Ambient bilinear form (Minkowski for K < 0, Euclidean otherwise).
  double ambient_inner(std::span<const double> a, std::span<const double> b) const;

  /// Canonical basepoint: (1/sqrt|K|, 0, ..., 0) or the origin when K = 0.
  Point origin() const;
  /// Coordinate unit tangent e_i (0 <= i < n) at origin().
  Tangent origin_basis(int i) const;

  /// Throws std::invalid_argument when p is off the model surface (1e-9).
  void require_point(const Point& p) const;
  /// Throws std::invalid_argument when v is not tangent at p (relative 1e-6).
  void require_tangent(const Point& p, const Tangent& v) const;

 private:
  double curvature_;
  int dimension_;
  Model model_;
};

/// Point plus unit-speed tangent: the state of the geodesic flow.
struct PhaseState {
  Point position;
  Tangent velocity;
};

/// Validates constraints and unit speed (1e-9).
PhaseState make_phase_state(const SpaceForm& s, Point position, Tangent velocity);

/// Orthonormal tangent vectors at a basepoint.
class TangentFrame {
 public:
  /// Projects `raw` onto the tangent space at p and runs Gram-Schmidt in g.
  /// Throws std::invalid_argument on linearly dependent input.
  static TangentFrame orthonormalize(const SpaceForm& s, const Point& p,
                                     std::vector<Tangent> raw);

  const Point& basepoint() const noexcept { return basepoint_; }
  const std::vector<Tangent>& vectors() const noexcept { return vectors_; }
  const Tangent& operator[](std::size_t i) const { return vectors_.at(i); }
  std::size_t size() const noexcept { return vectors_.size(); }

 private:
  TangentFrame(Point p, std::vector<Tangent> v) : basepoint_(std::move(p)), vectors_(std::move(v)) {}

  Point basepoint_;
  std::vector<Tangent> vectors_;
};

/// Riemannian metric g(u, v) on T_pM.
double metric_inner(const SpaceForm& s, const Point& p, const Tangent& u, const Tangent& v);
double metric_norm(const SpaceForm& s, const Point& p, const Tangent& v);

/// R(X,Y)Z = K (g(Y,Z) X - g(Z,X) Y).
Tangent curvature_tensor_apply(const SpaceForm& s, const Point& p, const Tangent& x,
                               const Tangent& y, const Tangent& z);

/// g(R(e1,e2)e2, e1) on the plane spanned by the first two frame vectors.
double sectional_curvature(const SpaceForm& s, const TangentFrame& frame);

Point exp_map(const SpaceForm& s, const Point& p, const Tangent& v);

double distance(const SpaceForm& s, const Point& x, const Point& y);

/// Exact geodesic flow for time t (any sign).
PhaseState geodesic_flow_closed(const SpaceForm& s, const PhaseState& st, double t);

/// RK4 integration of x'' = -K g(x',x') x with reprojection after each step.
/// Throws std::invalid_argument for dt <= 0 or t < 0.
PhaseState geodesic_flow_numeric(const SpaceForm& s, const PhaseState& st, double t,
                                 double dt);

/// Raw per-radius circle-defect samples behind circle_defect_curvature.
struct DefectSample {
  double radius = 0.0;
  double length = 0.0;       // l_r, geodesic polygon length of exp(circle)
  double flat_length = 0.0;  // same polygon in the tangent plane
  double estimate = 0.0;     // (3/pi)(flat_length - length)/r^3
};

std::vector<DefectSample> circle_defect_samples(const SpaceForm& s, const TangentFrame& frame,
                                                std::span<const double> radii, int segments);

/// Curvature of the frame's plane from the length defect of small geodesic
/// circles, extrapolated to r -> 0 in powers of r^2.
/// Radii must be positive, strictly decreasing, at most 0.5 (and below
/// pi/sqrt(K) on spheres); segments >= 64.
double circle_defect_curvature(const SpaceForm& s, const TangentFrame& frame,
                               std::span<const double> radii, int segments);

/// Richardson/Neville extrapolation of values sampled at h_i to h = 0,
/// assuming a polynomial error expansion in h.
double extrapolate_to_zero(std::span<const double> h, std::span<const double> values);

}  // namespace wchaos::spaceform
