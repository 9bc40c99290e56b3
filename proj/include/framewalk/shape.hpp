#pragma once

// The pre-shape manifold of closed planar curves. A shape is stored as its
// direction function theta sampled at the cell centres s_j = 2*pi*(j + 1/2)/N,
// so theta_j is the angle of the j-th arc-length segment. The manifold is the
// level set phi(theta) = (pi, 0, 0) with
//   phi(theta) = ((1/2pi) int theta ds, int cos(theta) ds, int sin(theta) ds).

#include "framewalk/manifold.hpp"

#include <string>
#include <vector>

namespace framewalk {

using Point2 = Eigen::Vector2d;

struct Shape {
  Vector theta;

  [[nodiscard]] Index samples() const { return theta.size(); }
};

// Closed polyline; the last point connects back to the first.
struct Contour {
  std::vector<Point2> points;
};

struct ShapeCurve {
  std::vector<Shape> shapes;
  double dt = 1.0;

  [[nodiscard]] std::vector<Vector> points() const;
  static ShapeCurve from_points(const std::vector<Vector>& points, double dt = 1.0);
};

// On-manifold tolerance used to validate shapes.
inline constexpr double kShapeTolerance = 1e-8;
inline constexpr Index kMinSamples = 8;

class ShapeManifold final : public Manifold {
 public:
  explicit ShapeManifold(Index samples);

  [[nodiscard]] Index ambient_dim() const override { return samples_; }
  [[nodiscard]] Index codim() const override { return 3; }
  [[nodiscard]] const QuadratureMetric& metric() const override { return metric_; }
  [[nodiscard]] Vector constraint_target() const override;
  [[nodiscard]] Vector constraint_value(const Vector& theta) const override;
  [[nodiscard]] Vector constraint_differential(const Vector& theta, const Vector& f) const override;
  [[nodiscard]] Matrix normal_generators(const Vector& theta) const override;

 private:
  Index samples_;
  QuadratureMetric metric_;
};

// Cell-centred parameter grid s_j = 2*pi*(j + 1/2)/n.
Vector arc_grid(Index n);

// theta(s) = s: the unit-speed circle, exactly on the manifold.
Shape circle_shape(Index n);

Eigen::Vector3d phi(const Vector& theta);
Eigen::Vector3d dphi(const Vector& theta, const Vector& f);
// Max-norm distance of phi(theta) from (pi, 0, 0).
double phi_residual(const Vector& theta);

// Orthonormal basis of span{1, cos theta, sin theta}; RankError if degenerate.
Matrix normal_basis(const Shape& s);

// Geometric total turning of the sampled direction function, 2*pi * winding.
double total_turning(const Vector& theta);

// Throws DegenerateInputError if theta is off the manifold beyond tol.
void validate_shape(const Shape& s, double tol = kShapeTolerance);
void validate_shape_curve(const ShapeCurve& curve, double tol = kShapeTolerance);

// Resamples to n arc-length-uniform points, takes segment angles, unwraps to a
// counter-clockwise representative, fixes the mean to pi and projects onto the
// manifold. Clockwise input is reversed and a note is appended to warnings.
Shape from_contour(const Contour& contour, Index n, std::vector<std::string>* warnings = nullptr);

// Integrates (cos theta, sin theta) over the arc grid; the result is centred at
// its vertex centroid and multiplied by scale. Off-manifold input is accepted.
Contour to_contour(const Vector& theta, double scale = 1.0);
Contour to_contour(const Shape& s, double scale = 1.0);

// |alpha(2pi) - alpha(0)| of the integrated curve at unit scale.
double closure_gap(const Vector& theta);

// Returns theta re-indexed by the cyclic start-point shift (and matching
// rotation offset) that best matches reference in L2.
Vector align_cyclic(const Vector& reference, const Vector& theta);
// L2 distance after align_cyclic.
double aligned_distance(const Vector& reference, const Vector& theta);

// Symmetric Hausdorff distance between closed polylines (vertex to polyline).
double hausdorff_distance(const Contour& a, const Contour& b);
double diameter(const Contour& c);

}  // namespace framewalk
