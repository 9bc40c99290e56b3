#pragma once

// Deterministic synthetic sequences used by the CLI and the test suites.

#include "framewalk/shape.hpp"

#include <cstdint>
#include <vector>

namespace framewalk {

struct EllipseMorphOptions {
  Index frames = 30;
  Index samples = 128;
  double start_ratio = 1.2;  // semi-axis ratio a/b at the first frame
  double end_ratio = 2.0;
};

// Ellipses whose aspect ratio moves smoothly from start_ratio to end_ratio,
// each converted to a shape (same start point and orientation every frame).
ShapeCurve ellipse_morph(const EllipseMorphOptions& options);

struct WobbleOptions {
  Index frames = 30;
  Index samples = 128;
  int modes = 3;
  double amplitude = 0.1;
  std::uint64_t seed = 1;
};

// theta_t = s + sum_k c_k(t) g_k(s), projected onto the manifold, where the
// g_k are distinct seeded Fourier modes of order 2..5 (all tangent at the
// circle) and c_k(t) are seeded sinusoids in t. Before projection the family
// lies in a modes-dimensional plane.
ShapeCurve fourier_wobble(const WobbleOptions& options);

struct GeodesicOptions {
  Index frames = 30;
  double total_angle = 1.5707963267948966;
  std::uint64_t seed = 1;
};

// Points along a seeded great circle on the unit sphere, equally spaced in angle.
std::vector<Vector> sphere_geodesic(const GeodesicOptions& options);

}  // namespace framewalk
