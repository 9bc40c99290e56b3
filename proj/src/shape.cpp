#include "framewalk/shape.hpp"

#include "framewalk/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace framewalk {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double a) {
  a = std::remainder(a, kTwoPi);
  if (a <= -kPi) a += kTwoPi;
  return a;
}

double cell(Index n) { return kTwoPi / static_cast<double>(n); }

void require_samples(Index n) {
  if (n < kMinSamples) {
    std::ostringstream msg;
    msg << "shape needs at least " << kMinSamples << " samples, got " << n;
    throw ParameterError(msg.str());
  }
}

double point_segment_distance(const Point2& p, const Point2& a, const Point2& b) {
  const Point2 ab = b - a;
  const double len2 = ab.squaredNorm();
  double t = len2 > 0.0 ? (p - a).dot(ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return (a + t * ab - p).norm();
}

double directed_hausdorff(const Contour& from, const Contour& to) {
  double worst = 0.0;
  const std::size_t m = to.points.size();
  for (const auto& p : from.points) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
      best = std::min(best, point_segment_distance(p, to.points[i], to.points[(i + 1) % m]));
    }
    worst = std::max(worst, best);
  }
  return worst;
}

// Points at n equal arc-length positions along the closed polyline.
std::vector<Point2> resample(const std::vector<Point2>& pts, Index n) {
  const std::size_t m = pts.size();
  std::vector<double> cumulative(m + 1, 0.0);
  for (std::size_t i = 0; i < m; ++i) cumulative[i + 1] = cumulative[i] + (pts[(i + 1) % m] - pts[i]).norm();
  const double total = cumulative[m];

  std::vector<Point2> out;
  out.reserve(static_cast<std::size_t>(n));
  std::size_t seg = 0;
  for (Index j = 0; j < n; ++j) {
    const double target = total * static_cast<double>(j) / static_cast<double>(n);
    while (seg + 1 < m && cumulative[seg + 1] <= target) ++seg;
    const double len = cumulative[seg + 1] - cumulative[seg];
    const double t = len > 0.0 ? (target - cumulative[seg]) / len : 0.0;
    out.push_back(pts[seg] + t * (pts[(seg + 1) % m] - pts[seg]));
  }
  return out;
}

}  // namespace

std::vector<Vector> ShapeCurve::points() const {
  std::vector<Vector> out;
  out.reserve(shapes.size());
  for (const auto& s : shapes) out.push_back(s.theta);
  return out;
}

ShapeCurve ShapeCurve::from_points(const std::vector<Vector>& points, double dt) {
  ShapeCurve curve;
  curve.dt = dt;
  curve.shapes.reserve(points.size());
  for (const auto& p : points) curve.shapes.push_back(Shape{p});
  return curve;
}

ShapeManifold::ShapeManifold(Index samples)
    : samples_(samples), metric_(QuadratureMetric::uniform_circle(std::max<Index>(samples, 1))) {
  require_samples(samples);
}

Vector ShapeManifold::constraint_target() const { return Eigen::Vector3d(kPi, 0.0, 0.0); }

Vector ShapeManifold::constraint_value(const Vector& theta) const {
  if (theta.size() != samples_) throw DimensionError("shape manifold: theta has wrong length");
  return phi(theta);
}

Vector ShapeManifold::constraint_differential(const Vector& theta, const Vector& f) const {
  if (theta.size() != samples_ || f.size() != samples_) {
    throw DimensionError("shape manifold: differential arguments have wrong length");
  }
  return dphi(theta, f);
}

Matrix ShapeManifold::normal_generators(const Vector& theta) const {
  if (theta.size() != samples_) throw DimensionError("shape manifold: theta has wrong length");
  Matrix g(samples_, 3);
  g.col(0).setOnes();
  g.col(1) = theta.array().cos();
  g.col(2) = theta.array().sin();
  return g;
}

Vector arc_grid(Index n) {
  const double h = cell(n);
  return Vector::LinSpaced(n, 0.5 * h, (static_cast<double>(n) - 0.5) * h);
}

Shape circle_shape(Index n) {
  require_samples(n);
  return Shape{arc_grid(n)};
}

Eigen::Vector3d phi(const Vector& theta) {
  const double h = cell(theta.size());
  return {theta.mean(), h * theta.array().cos().sum(), h * theta.array().sin().sum()};
}

Eigen::Vector3d dphi(const Vector& theta, const Vector& f) {
  if (theta.size() != f.size()) throw DimensionError("dphi: direction has wrong length");
  const double h = cell(theta.size());
  return {f.mean(), -h * (f.array() * theta.array().sin()).sum(), h * (f.array() * theta.array().cos()).sum()};
}

double phi_residual(const Vector& theta) {
  return (phi(theta) - Eigen::Vector3d(kPi, 0.0, 0.0)).lpNorm<Eigen::Infinity>();
}

Matrix normal_basis(const Shape& s) {
  const ShapeManifold m(s.samples());
  return normal_basis(m, s.theta);
}

double total_turning(const Vector& theta) {
  const Index n = theta.size();
  double total = 0.0;
  for (Index j = 0; j < n; ++j) total += wrap_angle(theta[(j + 1) % n] - theta[j]);
  return total;
}

void validate_shape(const Shape& s, double tol) {
  require_samples(s.samples());
  if (!s.theta.allFinite()) throw DegenerateInputError("shape has non-finite samples");
  const double r = phi_residual(s.theta);
  if (!(r <= tol)) {
    std::ostringstream msg;
    msg << "shape is off the manifold (phi residual " << r << " > " << tol << ")";
    throw DegenerateInputError(msg.str());
  }
}

void validate_shape_curve(const ShapeCurve& curve, double tol) {
  if (curve.shapes.size() < 2) throw ParameterError("shape curve needs at least 2 shapes");
  const Index n = curve.shapes.front().samples();
  for (std::size_t t = 0; t < curve.shapes.size(); ++t) {
    if (curve.shapes[t].samples() != n) throw DimensionError("shape curve mixes sample counts");
    try {
      validate_shape(curve.shapes[t], tol);
    } catch (Error& e) {
      e.add_context("shape " + std::to_string(t));
      throw;
    }
  }
}

Shape from_contour(const Contour& contour, Index n, std::vector<std::string>* warnings) {
  require_samples(n);
  const auto& pts = contour.points;
  if (pts.size() < static_cast<std::size_t>(kMinSamples)) {
    throw DegenerateInputError("contour needs at least 8 points");
  }
  double perimeter = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double len = (pts[(i + 1) % pts.size()] - pts[i]).norm();
    if (!std::isfinite(len)) throw DegenerateInputError("contour has non-finite coordinates");
    if (len == 0.0) throw DegenerateInputError("contour has coincident consecutive points at index " + std::to_string(i));
    perimeter += len;
  }
  if (!(perimeter > 0.0)) throw DegenerateInputError("contour has zero length");

  auto angles_of = [n](const std::vector<Point2>& samples) {
    Vector theta(n);
    for (Index j = 0; j < n; ++j) {
      const Point2 d = samples[static_cast<std::size_t>((j + 1) % n)] - samples[static_cast<std::size_t>(j)];
      theta[j] = std::atan2(d.y(), d.x());
    }
    return theta;
  };

  Vector raw = angles_of(resample(pts, n));
  long winding = std::lround(total_turning(raw) / kTwoPi);
  if (winding == -1) {
    std::vector<Point2> reversed(pts.rbegin(), pts.rend());
    raw = angles_of(resample(reversed, n));
    winding = std::lround(total_turning(raw) / kTwoPi);
    if (warnings != nullptr) warnings->push_back("contour is clockwise; traversal reversed");
  }
  if (winding != 1) {
    throw DegenerateInputError("contour turning number is " + std::to_string(winding) + ", expected +1 or -1");
  }

  Vector theta(n);
  theta[0] = raw[0];
  for (Index j = 1; j < n; ++j) theta[j] = theta[j - 1] + wrap_angle(raw[j] - raw[j - 1]);
  theta.array() += kPi - theta.mean();

  const ShapeManifold m(n);
  return Shape{project_to_manifold(m, theta).point};
}

Contour to_contour(const Vector& theta, double scale) {
  const Index n = theta.size();
  const double h = cell(n);
  Contour c;
  c.points.reserve(static_cast<std::size_t>(n));
  Point2 p = Point2::Zero();
  Point2 centroid = Point2::Zero();
  for (Index j = 0; j < n; ++j) {
    c.points.push_back(p);
    centroid += p;
    p += h * Point2(std::cos(theta[j]), std::sin(theta[j]));
  }
  centroid /= static_cast<double>(n);
  for (auto& q : c.points) q = scale * (q - centroid);
  return c;
}

Contour to_contour(const Shape& s, double scale) { return to_contour(s.theta, scale); }

double closure_gap(const Vector& theta) {
  const double h = cell(theta.size());
  return h * std::hypot(theta.array().cos().sum(), theta.array().sin().sum());
}

Vector align_cyclic(const Vector& reference, const Vector& theta) {
  const Index n = theta.size();
  if (reference.size() != n) throw DimensionError("align_cyclic: length mismatch");
  Vector best = theta;
  double best_err = std::numeric_limits<double>::infinity();
  Vector shifted(n);
  for (Index k = 0; k < n; ++k) {
    for (Index j = 0; j < n; ++j) {
      const Index src = j + k;
      shifted[j] = src < n ? theta[src] : theta[src - n] + kTwoPi;
    }
    shifted.array() += reference.mean() - shifted.mean();
    const double err = (shifted - reference).squaredNorm();
    if (err < best_err) {
      best_err = err;
      best = shifted;
    }
  }
  return best;
}

double aligned_distance(const Vector& reference, const Vector& theta) {
  const Vector aligned = align_cyclic(reference, theta);
  return std::sqrt(cell(theta.size()) * (aligned - reference).squaredNorm());
}

double hausdorff_distance(const Contour& a, const Contour& b) {
  if (a.points.empty() || b.points.empty()) throw ParameterError("hausdorff_distance: empty contour");
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

double diameter(const Contour& c) {
  double d = 0.0;
  for (std::size_t i = 0; i < c.points.size(); ++i) {
    for (std::size_t j = i + 1; j < c.points.size(); ++j) d = std::max(d, (c.points[i] - c.points[j]).norm());
  }
  return d;
}

}  // namespace framewalk
