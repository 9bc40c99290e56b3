#include "framewalk/sphere.hpp"

#include "framewalk/error.hpp"

#include <cmath>

namespace framewalk {

namespace {

constexpr double kTol = 1e-10;

void require_frame(const Eigen::Vector3d& p, const Eigen::Vector3d& v) {
  if (std::abs(p.norm() - 1.0) > kTol) throw ParameterError("great circle: base point is not on the unit sphere");
  if (std::abs(v.norm() - 1.0) > kTol) throw ParameterError("great circle: direction is not a unit vector");
  if (std::abs(p.dot(v)) > kTol) throw ParameterError("great circle: direction is not tangent at the base point");
}

}  // namespace

SphereManifold::SphereManifold() : metric_(QuadratureMetric::euclidean(3)) {}

Vector SphereManifold::constraint_target() const { return Vector::Ones(1); }

Vector SphereManifold::constraint_value(const Vector& x) const {
  if (x.size() != 3) throw DimensionError("sphere: point must have 3 coordinates");
  return Vector::Constant(1, x.squaredNorm());
}

Vector SphereManifold::constraint_differential(const Vector& x, const Vector& f) const {
  if (x.size() != 3 || f.size() != 3) throw DimensionError("sphere: arguments must have 3 coordinates");
  return Vector::Constant(1, 2.0 * x.dot(f));
}

Matrix SphereManifold::normal_generators(const Vector& x) const {
  if (x.size() != 3) throw DimensionError("sphere: point must have 3 coordinates");
  return x;
}

std::vector<Vector> great_circle(const Eigen::Vector3d& p, const Eigen::Vector3d& v, const std::vector<double>& angles) {
  require_frame(p, v);
  std::vector<Vector> out;
  out.reserve(angles.size());
  for (double a : angles) out.emplace_back(std::cos(a) * p + std::sin(a) * v);
  return out;
}

Eigen::Vector3d transport_closed_form(const Eigen::Vector3d& p, const Eigen::Vector3d& v, const Eigen::Vector3d& w,
                                      double angle) {
  require_frame(p, v);
  if (std::abs(p.dot(w)) > kTol * std::max(1.0, w.norm())) {
    throw ParameterError("closed-form transport: vector is not tangent at the base point");
  }
  const Eigen::Vector3d binormal = p.cross(v);
  const double along = w.dot(v);
  const double across = w.dot(binormal);
  return along * (-std::sin(angle) * p + std::cos(angle) * v) + across * binormal;
}

std::vector<double> uniform_angles(double total, int steps) {
  if (steps < 1) throw ParameterError("uniform_angles: steps must be positive");
  std::vector<double> out(static_cast<std::size_t>(steps) + 1);
  for (int i = 0; i <= steps; ++i) out[static_cast<std::size_t>(i)] = total * i / steps;
  return out;
}

}  // namespace framewalk
