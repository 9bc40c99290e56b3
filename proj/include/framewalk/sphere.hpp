#pragma once

// Unit 2-sphere in R^3 behind the Manifold interface, with closed-form great
// circles and parallel transport. Used to cross-check the generic machinery
// (codimension 1 here against 3 on the shape manifold).

#include "framewalk/manifold.hpp"

#include <vector>

namespace framewalk {

class SphereManifold final : public Manifold {
 public:
  SphereManifold();

  [[nodiscard]] Index ambient_dim() const override { return 3; }
  [[nodiscard]] Index codim() const override { return 1; }
  [[nodiscard]] const QuadratureMetric& metric() const override { return metric_; }
  [[nodiscard]] Vector constraint_target() const override;
  // |x|^2
  [[nodiscard]] Vector constraint_value(const Vector& x) const override;
  // 2 <x, f>
  [[nodiscard]] Vector constraint_differential(const Vector& x, const Vector& f) const override;
  [[nodiscard]] Matrix normal_generators(const Vector& x) const override;

 private:
  QuadratureMetric metric_;
};

// Points cos(a) p + sin(a) v for each angle a. p unit, v unit and tangent at p.
std::vector<Vector> great_circle(const Eigen::Vector3d& p, const Eigen::Vector3d& v, const std::vector<double>& angles);

// Transport of w (tangent at p) along the great circle from p in direction v
// through the given angle: the v component rotates with the velocity, the
// component along p x v stays fixed.
Eigen::Vector3d transport_closed_form(const Eigen::Vector3d& p, const Eigen::Vector3d& v, const Eigen::Vector3d& w,
                                      double angle);

// angles 0, total/steps, ..., total.
std::vector<double> uniform_angles(double total, int steps);

}  // namespace framewalk
