#include "framewalk/synth.hpp"

#include "framewalk/error.hpp"
#include "framewalk/random.hpp"
#include "framewalk/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace framewalk {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_frames(Index frames) {
  if (frames < 2) throw ParameterError("frames must be at least 2");
}

}  // namespace

ShapeCurve ellipse_morph(const EllipseMorphOptions& options) {
  require_frames(options.frames);
  if (!(options.start_ratio > 0.0) || !(options.end_ratio > 0.0)) throw ParameterError("ellipse ratios must be positive");
  const Index points = 4 * options.samples;
  ShapeCurve curve;
  curve.shapes.reserve(static_cast<std::size_t>(options.frames));
  for (Index t = 0; t < options.frames; ++t) {
    const double tau = static_cast<double>(t) / static_cast<double>(options.frames - 1);
    const double blend = 0.5 * (1.0 - std::cos(std::numbers::pi * tau));
    const double a = options.start_ratio + (options.end_ratio - options.start_ratio) * blend;
    Contour c;
    c.points.reserve(static_cast<std::size_t>(points));
    for (Index i = 0; i < points; ++i) {
      const double u = kTwoPi * static_cast<double>(i) / static_cast<double>(points);
      c.points.emplace_back(a * std::cos(u), std::sin(u));
    }
    curve.shapes.push_back(from_contour(c, options.samples));
  }
  return curve;
}

ShapeCurve fourier_wobble(const WobbleOptions& options) {
  require_frames(options.frames);
  if (options.modes < 1 || options.modes > 8) throw ParameterError("fourier-wobble supports 1 to 8 modes");
  Rng rng(options.seed);

  // Candidate modes: cos(ms), sin(ms) for m = 2..5.
  std::vector<int> pool(8);
  for (int i = 0; i < 8; ++i) pool[static_cast<std::size_t>(i)] = i;
  for (int i = 7; i > 0; --i) {
    const auto j = static_cast<int>(rng.next() % static_cast<std::uint64_t>(i + 1));
    std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
  }

  const Vector s = arc_grid(options.samples);
  Matrix modes(options.samples, options.modes);
  Vector weight(options.modes), freq(options.modes), phase(options.modes);
  for (int k = 0; k < options.modes; ++k) {
    const int id = pool[static_cast<std::size_t>(k)];
    const double order = 2.0 + static_cast<double>(id / 2);
    modes.col(k) = (id % 2 == 0) ? Vector((order * s.array()).cos()) : Vector((order * s.array()).sin());
    weight[k] = rng.uniform(0.5, 1.0);
    freq[k] = rng.uniform(0.5, 1.5);
    phase[k] = rng.uniform(0.0, kTwoPi);
  }

  const ShapeManifold m(options.samples);
  ShapeCurve curve;
  curve.shapes.reserve(static_cast<std::size_t>(options.frames));
  for (Index t = 0; t < options.frames; ++t) {
    const double tau = static_cast<double>(t) / static_cast<double>(options.frames - 1);
    Vector theta = s;
    for (int k = 0; k < options.modes; ++k) {
      theta += options.amplitude * weight[k] * std::sin(kTwoPi * freq[k] * tau + phase[k]) * modes.col(k);
    }
    curve.shapes.push_back(Shape{project_to_manifold(m, theta).point});
  }
  return curve;
}

std::vector<Vector> sphere_geodesic(const GeodesicOptions& options) {
  require_frames(options.frames);
  Rng rng(options.seed);
  Eigen::Vector3d p(rng.normal(), rng.normal(), rng.normal());
  p.normalize();
  Eigen::Vector3d v(rng.normal(), rng.normal(), rng.normal());
  v -= v.dot(p) * p;
  v.normalize();
  return great_circle(p, v, uniform_angles(options.total_angle, static_cast<int>(options.frames - 1)));
}

}  // namespace framewalk
