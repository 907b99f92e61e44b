#include "wchaos/spaceform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "wchaos/kernels.hpp"

namespace wchaos::spaceform {

namespace {

constexpr double kPointTol = 1e-9;
constexpr double kTangentTol = 1e-6;
constexpr double kSpeedTol = 1e-9;

using Vec = std::vector<double>;

double dot(std::span<const double> a, std::span<const double> b, std::size_t from = 0) {
  double acc = 0.0;
  for (std::size_t i = from; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double euclid_norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

Vec axpby(double a, std::span<const double> x, double b, std::span<const double> y) {
  Vec out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = a * x[i] + b * y[i];
  return out;
}

void require_size(const SpaceForm& s, std::span<const double> v, const char* what) {
  if (v.size() != s.ambient_dim()) {
    throw std::invalid_argument(std::string(what) + ": expected " +
                                std::to_string(s.ambient_dim()) + " coordinates, got " +
                                std::to_string(v.size()));
  }
}

// g(u, v) on the hyperboloid for tangent u, v at x, without the
// -u0 v0 + us.vs cancellation that ruins the plain form once |x| is large:
//   g = [ (us.vs)/|K| + sum_{i<j} (u_i x_j - u_j x_i)(v_i x_j - v_j x_i) ] / x0^2
// with x0^2 = 1/|K| + |xs|^2 (spatial indices only).
double hyperbolic_inner(double abs_k, std::span<const double> x, std::span<const double> u,
                        std::span<const double> v) {
  const std::size_t n = x.size();
  double wedge = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      wedge += (u[i] * x[j] - u[j] * x[i]) * (v[i] * x[j] - v[j] * x[i]);
    }
  }
  const double x0sq = 1.0 / abs_k + dot(x, x, 1);
  return (dot(u, v, 1) / abs_k + wedge) / x0sq;
}

// Speed^2 used inside the RK stages, where (x, v) may sit slightly off TM.
double stage_speed_sq(const SpaceForm& s, std::span<const double> x, std::span<const double> v) {
  switch (s.model()) {
    case Model::Hyperbolic:
      return hyperbolic_inner(-s.curvature(), x, v, v);
    case Model::Spherical: {
      // Tangential part of v, |v|^2 - K (x.v)^2.
      const double xv = dot(x, v);
      return dot(v, v) - s.curvature() * xv * xv;
    }
    case Model::Euclidean:
      break;
  }
  return dot(v, v);
}

// Puts (x, v) back on the unit tangent bundle.
void reproject(const SpaceForm& s, Vec& x, Vec& v) {
  const double k = s.curvature();
  switch (s.model()) {
    case Model::Hyperbolic: {
      x[0] = std::sqrt(1.0 / -k + dot(x, x, 1));
      v[0] = dot(x, v, 1) / x[0];
      const double speed = std::sqrt(hyperbolic_inner(-k, x, v, v));
      for (double& c : v) c /= speed;
      break;
    }
    case Model::Spherical: {
      const double scale = 1.0 / (euclid_norm(x) * std::sqrt(k));
      for (double& c : x) c *= scale;
      const double xv = k * dot(x, v);
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= xv * x[i];
      const double speed = euclid_norm(v);
      for (double& c : v) c /= speed;
      break;
    }
    case Model::Euclidean: {
      const double speed = euclid_norm(v);
      for (double& c : v) c /= speed;
      break;
    }
  }
}

// Geodesic length of a chord whose squared ambient norm is `chord_sq`.
double arc_from_chord_sq(const SpaceForm& s, double chord_sq) {
  const double chord = std::sqrt(std::max(chord_sq, 0.0));
  const double k = s.curvature();
  switch (s.model()) {
    case Model::Hyperbolic: {
      const double a = std::sqrt(-k);
      return 2.0 / a * std::asinh(0.5 * a * chord);
    }
    case Model::Spherical: {
      const double a = std::sqrt(k);
      return 2.0 / a * std::asin(std::min(1.0, 0.5 * a * chord));
    }
    case Model::Euclidean:
      break;
  }
  return chord;
}

}  // namespace

SpaceForm::SpaceForm(double curvature, int dimension)
    : curvature_(curvature), dimension_(dimension), model_(Model::Euclidean) {
  if (!std::isfinite(curvature)) throw std::invalid_argument("curvature must be finite");
  if (dimension < 2) throw std::invalid_argument("space form dimension must be >= 2");
  if (curvature < 0.0) model_ = Model::Hyperbolic;
  if (curvature > 0.0) model_ = Model::Spherical;
}

std::size_t SpaceForm::ambient_dim() const noexcept {
  const auto n = static_cast<std::size_t>(dimension_);
  return model_ == Model::Euclidean ? n : n + 1;
}

double SpaceForm::ambient_inner(std::span<const double> a, std::span<const double> b) const {
  const double rest = dot(a, b, 1);
  const double lead = a[0] * b[0];
  return model_ == Model::Hyperbolic ? rest - lead : rest + lead;
}

Point SpaceForm::origin() const {
  Point p{Vec(ambient_dim(), 0.0)};
  if (model_ != Model::Euclidean) p.coords[0] = 1.0 / std::sqrt(std::abs(curvature_));
  return p;
}

Tangent SpaceForm::origin_basis(int i) const {
  if (i < 0 || i >= dimension_) throw std::out_of_range("origin_basis: index out of range");
  Tangent t{Vec(ambient_dim(), 0.0)};
  const std::size_t offset = model_ == Model::Euclidean ? 0 : 1;
  t.coords[offset + static_cast<std::size_t>(i)] = 1.0;
  return t;
}

void SpaceForm::require_point(const Point& p) const {
  require_size(*this, p.coords, "point");
  for (double c : p.coords) {
    if (!std::isfinite(c)) throw std::invalid_argument("point has non-finite coordinates");
  }
  switch (model_) {
    case Model::Hyperbolic: {
      const double expected = std::sqrt(1.0 / -curvature_ + dot(p.coords, p.coords, 1));
      if (!(p.coords[0] > 0.0) || std::abs(p.coords[0] - expected) > kPointTol * expected) {
        throw std::invalid_argument("point is off the hyperboloid sheet");
      }
      break;
    }
    case Model::Spherical: {
      const double r = euclid_norm(p.coords) * std::sqrt(curvature_);
      if (std::abs(r - 1.0) > kPointTol) throw std::invalid_argument("point is off the sphere");
      break;
    }
    case Model::Euclidean:
      break;
  }
}

void SpaceForm::require_tangent(const Point& p, const Tangent& v) const {
  require_size(*this, v.coords, "tangent");
  for (double c : v.coords) {
    if (!std::isfinite(c)) throw std::invalid_argument("tangent has non-finite coordinates");
  }
  if (model_ == Model::Euclidean) return;
  const double scale = euclid_norm(p.coords) * euclid_norm(v.coords);
  if (scale == 0.0) return;
  if (std::abs(ambient_inner(p.coords, v.coords)) > kTangentTol * scale) {
    throw std::invalid_argument("vector is not tangent at the given point");
  }
}

PhaseState make_phase_state(const SpaceForm& s, Point position, Tangent velocity) {
  s.require_point(position);
  s.require_tangent(position, velocity);
  const double speed_sq = metric_inner(s, position, velocity, velocity);
  if (std::abs(speed_sq - 1.0) > kSpeedTol) {
    throw std::invalid_argument("phase state velocity must have unit speed");
  }
  return PhaseState{std::move(position), std::move(velocity)};
}

TangentFrame TangentFrame::orthonormalize(const SpaceForm& s, const Point& p,
                                          std::vector<Tangent> raw) {
  s.require_point(p);
  const double k = s.curvature();
  std::vector<Tangent> out;
  out.reserve(raw.size());
  for (Tangent& t : raw) {
    require_size(s, t.coords, "frame vector");
    // Projection onto T_pM: v - K <p,v> p.
    if (s.model() != Model::Euclidean) {
      const double c = k * s.ambient_inner(p.coords, t.coords);
      for (std::size_t i = 0; i < t.coords.size(); ++i) t.coords[i] -= c * p.coords[i];
    }
    const double before = metric_norm(s, p, t);
    for (const Tangent& e : out) {
      const double c = metric_inner(s, p, t, e);
      for (std::size_t i = 0; i < t.coords.size(); ++i) t.coords[i] -= c * e.coords[i];
    }
    const double after = metric_norm(s, p, t);
    if (!(after > 1e-10 * before) || !(after > 0.0)) {
      throw std::invalid_argument("frame vectors are linearly dependent");
    }
    for (double& c : t.coords) c /= after;
    out.push_back(std::move(t));
  }
  return TangentFrame(p, std::move(out));
}

double metric_inner(const SpaceForm& s, const Point& p, const Tangent& u, const Tangent& v) {
  s.require_tangent(p, u);
  s.require_tangent(p, v);
  if (s.model() == Model::Hyperbolic) {
    return hyperbolic_inner(-s.curvature(), p.coords, u.coords, v.coords);
  }
  return dot(u.coords, v.coords);
}

double metric_norm(const SpaceForm& s, const Point& p, const Tangent& v) {
  return std::sqrt(std::max(0.0, metric_inner(s, p, v, v)));
}

Tangent curvature_tensor_apply(const SpaceForm& s, const Point& p, const Tangent& x,
                               const Tangent& y, const Tangent& z) {
  s.require_tangent(p, x);
  const double k = s.curvature();
  const double gyz = metric_inner(s, p, y, z);
  const double gzx = metric_inner(s, p, z, x);
  return Tangent{axpby(k * gyz, x.coords, -k * gzx, y.coords)};
}

double sectional_curvature(const SpaceForm& s, const TangentFrame& frame) {
  if (frame.size() < 2) throw std::invalid_argument("sectional_curvature: need two vectors");
  const Point& p = frame.basepoint();
  const Tangent r = curvature_tensor_apply(s, p, frame[0], frame[1], frame[1]);
  // Divided by the Gram determinant, which is 1 up to rounding for the
  // orthonormal frame.
  const double g11 = metric_inner(s, p, frame[0], frame[0]);
  const double g12 = metric_inner(s, p, frame[0], frame[1]);
  const double g22 = metric_inner(s, p, frame[1], frame[1]);
  return metric_inner(s, p, r, frame[0]) / (g11 * g22 - g12 * g12);
}

Point exp_map(const SpaceForm& s, const Point& p, const Tangent& v) {
  const double len = metric_norm(s, p, v);
  if (len == 0.0) return p;
  const double k = s.curvature();
  switch (s.model()) {
    case Model::Hyperbolic: {
      const double a = std::sqrt(-k);
      return Point{axpby(std::cosh(a * len), p.coords, std::sinh(a * len) / (a * len), v.coords)};
    }
    case Model::Spherical: {
      const double a = std::sqrt(k);
      return Point{axpby(std::cos(a * len), p.coords, std::sin(a * len) / (a * len), v.coords)};
    }
    case Model::Euclidean:
      break;
  }
  return Point{axpby(1.0, p.coords, 1.0, v.coords)};
}

double distance(const SpaceForm& s, const Point& x, const Point& y) {
  s.require_point(x);
  s.require_point(y);
  const Vec diff = axpby(1.0, x.coords, -1.0, y.coords);
  const double k = s.curvature();
  switch (s.model()) {
    case Model::Hyperbolic: {
      const double a = std::sqrt(-k);
      const double cosh_ad = k * s.ambient_inner(x.coords, y.coords);
      if (cosh_ad >= 2.0) return std::acosh(cosh_ad) / a;
      return arc_from_chord_sq(s, s.ambient_inner(diff, diff));
    }
    case Model::Spherical: {
      const Vec sum = axpby(1.0, x.coords, 1.0, y.coords);
      return 2.0 / std::sqrt(k) * std::atan2(euclid_norm(diff), euclid_norm(sum));
    }
    case Model::Euclidean:
      break;
  }
  return euclid_norm(diff);
}

PhaseState geodesic_flow_closed(const SpaceForm& s, const PhaseState& st, double t) {
  const Vec& x = st.position.coords;
  const Vec& v = st.velocity.coords;
  const double k = s.curvature();
  switch (s.model()) {
    case Model::Hyperbolic: {
      const double a = std::sqrt(-k);
      const double c = std::cosh(a * t);
      const double sh = std::sinh(a * t);
      return PhaseState{Point{axpby(c, x, sh / a, v)}, Tangent{axpby(a * sh, x, c, v)}};
    }
    case Model::Spherical: {
      const double a = std::sqrt(k);
      const double c = std::cos(a * t);
      const double sn = std::sin(a * t);
      return PhaseState{Point{axpby(c, x, sn / a, v)}, Tangent{axpby(-a * sn, x, c, v)}};
    }
    case Model::Euclidean:
      break;
  }
  return PhaseState{Point{axpby(1.0, x, t, v)}, st.velocity};
}

PhaseState geodesic_flow_numeric(const SpaceForm& s, const PhaseState& st, double t,
                                 double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("geodesic_flow_numeric: dt must be positive");
  if (!(t >= 0.0)) throw std::invalid_argument("geodesic_flow_numeric: t must be >= 0");

  const double k = s.curvature();
  const std::size_t dim = s.ambient_dim();
  Vec x = st.position.coords;
  Vec v = st.velocity.coords;

  auto accel = [&](const Vec& px, const Vec& pv, Vec& out) {
    const double factor = -k * stage_speed_sq(s, px, pv);
    for (std::size_t i = 0; i < dim; ++i) out[i] = factor * px[i];
  };

  Vec k1x(dim), k1v(dim), k2x(dim), k2v(dim), k3x(dim), k3v(dim), k4x(dim), k4v(dim);
  Vec tx(dim), tv(dim);
  auto step = [&](double h) {
    k1x = v;
    accel(x, v, k1v);
    for (std::size_t i = 0; i < dim; ++i) {
      tx[i] = x[i] + 0.5 * h * k1x[i];
      tv[i] = v[i] + 0.5 * h * k1v[i];
    }
    k2x = tv;
    accel(tx, tv, k2v);
    for (std::size_t i = 0; i < dim; ++i) {
      tx[i] = x[i] + 0.5 * h * k2x[i];
      tv[i] = v[i] + 0.5 * h * k2v[i];
    }
    k3x = tv;
    accel(tx, tv, k3v);
    for (std::size_t i = 0; i < dim; ++i) {
      tx[i] = x[i] + h * k3x[i];
      tv[i] = v[i] + h * k3v[i];
    }
    k4x = tv;
    accel(tx, tv, k4v);
    for (std::size_t i = 0; i < dim; ++i) {
      x[i] += h / 6.0 * (k1x[i] + 2.0 * k2x[i] + 2.0 * k3x[i] + k4x[i]);
      v[i] += h / 6.0 * (k1v[i] + 2.0 * k2v[i] + 2.0 * k3v[i] + k4v[i]);
    }
    reproject(s, x, v);
  };

  const auto full = static_cast<std::size_t>(std::floor(t / dt * (1.0 + 1e-12)));
  for (std::size_t i = 0; i < full; ++i) step(dt);
  const double rest = t - static_cast<double>(full) * dt;
  if (rest > 1e-12 * dt) step(rest);
  return PhaseState{Point{std::move(x)}, Tangent{std::move(v)}};
}

std::vector<DefectSample> circle_defect_samples(const SpaceForm& s, const TangentFrame& frame,
                                                std::span<const double> radii, int segments) {
  if (frame.size() < 2) throw std::invalid_argument("circle defect: frame needs two vectors");
  if (segments < 64) throw std::invalid_argument("circle defect: segments must be >= 64");
  if (radii.empty()) throw std::invalid_argument("circle defect: no radii");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || radii[i] > 0.5) {
      throw std::invalid_argument("circle defect: radii must lie in (0, 0.5]");
    }
    if (i > 0 && !(radii[i] < radii[i - 1])) {
      throw std::invalid_argument("circle defect: radii must be strictly decreasing");
    }
    if (s.model() == Model::Spherical && radii[i] >= std::numbers::pi / std::sqrt(s.curvature())) {
      throw std::invalid_argument("circle defect: radius beyond the sphere injectivity radius");
    }
  }

  const Point& p = frame.basepoint();
  const std::size_t dim = s.ambient_dim();
  const auto count = static_cast<std::size_t>(segments);
  std::vector<Vec> columns(dim, Vec(count));
  std::vector<const double*> column_ptrs(dim);
  for (std::size_t d = 0; d < dim; ++d) column_ptrs[d] = columns[d].data();
  Vec signature(dim, 1.0);
  if (s.model() == Model::Hyperbolic) signature[0] = -1.0;
  Vec chord_sq(count);

  std::vector<DefectSample> out;
  out.reserve(radii.size());
  for (double r : radii) {
    for (std::size_t k = 0; k < count; ++k) {
      const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(count);
      const Tangent w{axpby(r * std::cos(theta), frame[0].coords, r * std::sin(theta),
                            frame[1].coords)};
      const Point q = exp_map(s, p, w);
      for (std::size_t d = 0; d < dim; ++d) columns[d][k] = q.coords[d];
    }
    kernels::closed_chord_norms_sq(column_ptrs, signature, count, chord_sq);
    double length = 0.0;
    for (double c : chord_sq) length += arc_from_chord_sq(s, c);
    const double n = static_cast<double>(count);
    const double flat = 2.0 * n * r * std::sin(std::numbers::pi / n);
    out.push_back(DefectSample{r, length, flat, 3.0 / std::numbers::pi * (flat - length) / (r * r * r)});
  }
  return out;
}

double circle_defect_curvature(const SpaceForm& s, const TangentFrame& frame,
                               std::span<const double> radii, int segments) {
  const std::vector<DefectSample> samples = circle_defect_samples(s, frame, radii, segments);
  Vec h, values;
  for (const DefectSample& d : samples) {
    h.push_back(d.radius * d.radius);
    values.push_back(d.estimate);
  }
  return extrapolate_to_zero(h, values);
}

double extrapolate_to_zero(std::span<const double> h, std::span<const double> values) {
  if (h.size() != values.size() || h.empty()) {
    throw std::invalid_argument("extrapolate_to_zero: mismatched or empty input");
  }
  Vec table(values.begin(), values.end());
  const std::size_t n = table.size();
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = 0; i + level < n; ++i) {
      const double hi = h[i];
      const double hj = h[i + level];
      table[i] = (hi * table[i + 1] - hj * table[i]) / (hi - hj);
    }
  }
  return table[0];
}

}  // namespace wchaos::spaceform
