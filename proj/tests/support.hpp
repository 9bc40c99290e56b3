#pragma once

// Oracles and generators shared by the test binaries. Nothing here calls into
// the library except to build inputs.

#include <framewalk/manifold.hpp>
#include <framewalk/random.hpp>
#include <framewalk/shape.hpp>

#include <Eigen/SVD>

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

namespace testing {

using framewalk::Index;
using framewalk::Matrix;
using framewalk::Vector;

inline constexpr double kPi = std::numbers::pi;

// Adaptive Simpson on [a, b].
inline double simpson_step(const std::function<double(double)>& f, double a, double b, double fa, double fm,
                           double fb, double whole, double eps, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6 * (fa + 4 * flm + fm);
  const double right = (b - m) / 6 * (fm + 4 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15 * eps) return left + right + (left + right - whole) / 15;
  return simpson_step(f, a, m, fa, flm, fm, left, eps / 2, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, eps / 2, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b, double eps = 1e-12) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6 * (fa + 4 * fm + fb);
  return simpson_step(f, a, b, fa, fm, fb, whole, eps, 40);
}

inline Vector sample(Index n, const std::function<double(double)>& f) {
  Vector v(n);
  for (Index j = 0; j < n; ++j) v(j) = f(2 * kPi * (static_cast<double>(j) + 0.5) / static_cast<double>(n));
  return v;
}

// phi by a plain loop, written independently of the library.
inline std::array<double, 3> phi_oracle(const Vector& theta) {
  const auto n = static_cast<double>(theta.size());
  const double h = 2 * kPi / n;
  long double mean = 0, c = 0, s = 0;
  for (Index j = 0; j < theta.size(); ++j) {
    mean += theta(j);
    c += std::cos(theta(j));
    s += std::sin(theta(j));
  }
  return {static_cast<double>(mean / n), static_cast<double>(c * h), static_cast<double>(s * h)};
}

inline double phi_oracle_residual(const Vector& theta) {
  const auto p = phi_oracle(theta);
  return std::max({std::abs(p[0] - kPi), std::abs(p[1]), std::abs(p[2])});
}

inline double l2(const Vector& f) { return std::sqrt(2 * kPi / static_cast<double>(f.size()) * f.squaredNorm()); }

inline Vector random_vector(framewalk::Rng& rng, Index n) {
  Vector v(n);
  for (Index j = 0; j < n; ++j) v(j) = rng.normal();
  return v;
}

// Smooth random perturbation of low Fourier order.
inline Vector random_smooth(framewalk::Rng& rng, Index n, double amplitude, int max_order = 6) {
  Vector v = Vector::Zero(n);
  for (int k = 1; k <= max_order; ++k) {
    const double a = rng.normal() * amplitude / k, b = rng.normal() * amplitude / k;
    v += sample(n, [&](double s) { return a * std::cos(k * s) + b * std::sin(k * s); });
  }
  return v;
}

// A random point on the shape manifold near the circle.
inline Vector random_shape(framewalk::Rng& rng, Index n, double amplitude = 0.15) {
  const framewalk::ShapeManifold m(n);
  Vector theta = framewalk::arc_grid(n) + random_smooth(rng, n, amplitude);
  return framewalk::project_to_manifold(m, theta).point;
}

// Orthogonal Q minimizing |a Q - b|_F (rows are samples).
inline Matrix procrustes(const Matrix& a, const Matrix& b) {
  Eigen::JacobiSVD<Matrix> svd(a.transpose() * b, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().transpose();
}

// Rigid alignment (rotation + translation) of paired 2D point sets; returns
// the points of a moved onto b.
inline std::vector<framewalk::Point2> rigid_align(const std::vector<framewalk::Point2>& a,
                                                  const std::vector<framewalk::Point2>& b) {
  const auto n = static_cast<Index>(a.size());
  Matrix pa(n, 2), pb(n, 2);
  for (Index i = 0; i < n; ++i) {
    pa.row(i) = a[static_cast<std::size_t>(i)].transpose();
    pb.row(i) = b[static_cast<std::size_t>(i)].transpose();
  }
  const Eigen::RowVector2d ca = pa.colwise().mean(), cb = pb.colwise().mean();
  pa.rowwise() -= ca;
  pb.rowwise() -= cb;
  Matrix r = procrustes(pa, pb);
  if (r.determinant() < 0) {
    Eigen::JacobiSVD<Matrix> svd(pa.transpose() * pb, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Matrix d = Matrix::Identity(2, 2);
    d(1, 1) = -1;
    r = svd.matrixU() * d * svd.matrixV().transpose();
  }
  std::vector<framewalk::Point2> out;
  for (Index i = 0; i < n; ++i) out.emplace_back((pa.row(i) * r + cb).transpose());
  return out;
}

inline framewalk::Contour ellipse_contour(double a, double b, int points, double phase = 0.0) {
  framewalk::Contour c;
  for (int i = 0; i < points; ++i) {
    const double t = 2 * kPi * i / points + phase;
    c.points.emplace_back(a * std::cos(t), b * std::sin(t));
  }
  return c;
}

// Rodrigues rotation of w about unit axis k by angle a.
inline Eigen::Vector3d rodrigues(const Eigen::Vector3d& w, const Eigen::Vector3d& k, double a) {
  return w * std::cos(a) + k.cross(w) * std::sin(a) + k * k.dot(w) * (1 - std::cos(a));
}

}  // namespace testing
