#include "support.hpp"

#include <doctest.h>

#include <framewalk/error.hpp>
#include <framewalk/shape.hpp>

#include <cmath>

using namespace framewalk;
using testing::kPi;
using testing::sample;

TEST_CASE("phi: examples") {
  const Vector circle = circle_shape(256).theta;
  const Eigen::Vector3d p = phi(circle);
  CHECK(std::abs(p(0) - kPi) <= 1e-8);
  CHECK(std::abs(p(1)) <= 1e-8);
  CHECK(std::abs(p(2)) <= 1e-8);

  const Eigen::Vector3d shifted = phi(Vector(circle.array() + 0.1));
  CHECK(std::abs(shifted(0) - (p(0) + 0.1)) <= 1e-12);

  const Shape e = from_contour(testing::ellipse_contour(2, 1, 1024), 256);
  CHECK(testing::phi_oracle_residual(e.theta) <= 1e-8);
}

TEST_CASE("phi agrees with the loop oracle") {
  Rng rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const Vector theta = testing::random_vector(rng, 50);
    const auto o = testing::phi_oracle(theta);
    const Eigen::Vector3d p = phi(theta);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(p(i) - o[static_cast<std::size_t>(i)]) <= 1e-12);
  }
}

TEST_CASE("normal_basis: examples") {
  const Index n = 128;
  const Matrix b = normal_basis(circle_shape(n));
  REQUIRE(b.cols() == 3);
  CHECK((b.col(0) - Vector::Constant(n, 1 / std::sqrt(2 * kPi))).cwiseAbs().maxCoeff() <= 1e-8);
  CHECK((b.col(1) - sample(n, [](double s) { return std::cos(s) / std::sqrt(kPi); })).cwiseAbs().maxCoeff() <= 1e-8);
  CHECK((b.col(2) - sample(n, [](double s) { return std::sin(s) / std::sqrt(kPi); })).cwiseAbs().maxCoeff() <= 1e-8);

  Rng rng(22);
  const auto metric = QuadratureMetric::uniform_circle(n);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix bb = normal_basis(Shape{testing::random_shape(rng, n)});
    CHECK((cross_gram(bb, bb, metric) - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() <= 1e-10);
  }

  CHECK_THROWS_AS(normal_basis(Shape{Vector::Constant(n, kPi)}), RankError);
}

TEST_CASE("dphi: examples") {
  const Index n = 128;
  const Vector circle = circle_shape(n).theta;
  const Eigen::Vector3d d1 = dphi(circle, Vector::Ones(n));
  CHECK((d1 - Eigen::Vector3d(1, 0, 0)).cwiseAbs().maxCoeff() <= 1e-8);
  const Eigen::Vector3d d2 = dphi(circle, sample(n, [](double s) { return std::sin(2 * s); }));
  CHECK(d2.cwiseAbs().maxCoeff() <= 1e-8);
  CHECK_THROWS_AS(dphi(circle, Vector::Ones(n - 1)), DimensionError);
}

TEST_CASE("dphi: finite-difference oracle on 100 random pairs") {
  Rng rng(23);
  const double eps = 1e-6;
  for (int trial = 0; trial < 100; ++trial) {
    const Index n = 16 + static_cast<Index>(rng.uniform() * 200);
    const Vector theta = testing::random_shape(rng, n, 0.3);
    const Vector f = testing::random_vector(rng, n);
    const auto plus = testing::phi_oracle(theta + eps * f);
    const auto minus = testing::phi_oracle(theta - eps * f);
    Eigen::Vector3d fd;
    for (int i = 0; i < 3; ++i) fd(i) = (plus[static_cast<std::size_t>(i)] - minus[static_cast<std::size_t>(i)]) / (2 * eps);
    const Eigen::Vector3d an = dphi(theta, f);
    CHECK((fd - an).norm() <= 1e-6 * an.norm());
  }
}

TEST_CASE("from_contour: regular 64-gon") {
  Contour c;
  for (int i = 0; i < 64; ++i) c.points.emplace_back(std::cos(2 * kPi * i / 64), std::sin(2 * kPi * i / 64));
  const Shape s = from_contour(c, 128);
  const Vector circle = circle_shape(128).theta;
  const Vector aligned = align_cyclic(circle, s.theta);
  CHECK((aligned - circle).cwiseAbs().maxCoeff() <= 0.05);
}

TEST_CASE("from_contour: ellipse lands on the manifold with winding +1") {
  const Shape s = from_contour(testing::ellipse_contour(2, 1, 512), 256);
  CHECK(phi_residual(s.theta) <= 1e-8);
  CHECK(testing::phi_oracle_residual(s.theta) <= 1e-8);
  CHECK(std::abs(total_turning(s.theta) - 2 * kPi) <= 1e-6);
}

TEST_CASE("from_contour: clockwise input is reversed with a warning") {
  Contour c = testing::ellipse_contour(2, 1, 200);
  std::reverse(c.points.begin(), c.points.end());
  std::vector<std::string> warnings;
  const Shape s = from_contour(c, 128, &warnings);
  CHECK(warnings.size() == 1);
  CHECK(std::abs(total_turning(s.theta) - 2 * kPi) <= 1e-6);
  CHECK(phi_residual(s.theta) <= 1e-8);
  std::vector<std::string> none;
  from_contour(testing::ellipse_contour(2, 1, 200), 128, &none);
  CHECK(none.empty());
}

TEST_CASE("from_contour: degenerate input") {
  Contour few;
  for (int i = 0; i < 5; ++i) few.points.emplace_back(std::cos(i), std::sin(i));
  CHECK_THROWS_AS(from_contour(few, 64), DegenerateInputError);
  Contour zero;
  for (int i = 0; i < 10; ++i) zero.points.emplace_back(1.0, 1.0);
  CHECK_THROWS_AS(from_contour(zero, 64), DegenerateInputError);
  Contour repeated = testing::ellipse_contour(2, 1, 20);
  repeated.points[4] = repeated.points[3];
  CHECK_THROWS_AS(from_contour(repeated, 64), DegenerateInputError);
  CHECK_THROWS_AS(from_contour(testing::ellipse_contour(2, 1, 20), 4), ParameterError);
}

TEST_CASE("to_contour: examples") {
  const Index n = 256;
  const Contour c = to_contour(circle_shape(n));
  // regular n-gon with side 2 pi / n; normalize by its circumradius
  const double r = (2 * kPi / static_cast<double>(n)) / (2 * std::sin(kPi / static_cast<double>(n)));
  for (const auto& p : c.points) CHECK(std::abs(p.norm() / r - 1.0) <= 1e-6);
  CHECK(closure_gap(circle_shape(n).theta) <= 1e-6);

  Rng rng(24);
  for (int trial = 0; trial < 5; ++trial) {
    const Vector s = testing::random_shape(rng, n);
    const Shape back = from_contour(to_contour(s), n);
    CHECK(testing::l2(align_cyclic(s, back.theta) - s) <= 1e-4);
  }

  // closure violated by 0.1
  Vector off = circle_shape(n).theta;
  off += sample(n, [](double t) { return 0.1 / std::sqrt(kPi) * std::cos(t); });
  const Contour oc = to_contour(off);
  CHECK(oc.points.size() == static_cast<std::size_t>(n));
  CHECK(closure_gap(off) > 1e-3);
}

TEST_CASE("from_contour output: on the manifold, turning 2 pi") {
  Rng rng(25);
  for (int trial = 0; trial < 40; ++trial) {
    const double a = rng.uniform(1, 3), b = rng.uniform(0.5, 1.5);
    Contour c;
    const int pts = 50 + static_cast<int>(rng.uniform() * 300);
    const double k = rng.uniform(0, 0.2);
    for (int i = 0; i < pts; ++i) {
      const double t = 2 * kPi * i / pts;
      const double rad = 1 + k * std::cos(3 * t);
      c.points.emplace_back(a * rad * std::cos(t) + 5, b * rad * std::sin(t) - 2);
    }
    const Shape s = from_contour(c, 64 + static_cast<Index>(rng.uniform() * 200));
    CHECK(testing::phi_oracle_residual(s.theta) <= 1e-8);
    CHECK(std::abs(total_turning(s.theta) - 2 * kPi) <= 1e-6);
  }
}

TEST_CASE("tangent_project at a shape annihilates the generators") {
  Rng rng(26);
  const ShapeManifold m(96);
  for (int trial = 0; trial < 20; ++trial) {
    const Vector p = testing::random_shape(rng, 96);
    const Matrix g = m.normal_generators(p);
    for (Index i = 0; i < 3; ++i) CHECK(norm(tangent_project(m, p, Vector(g.col(i))), m.metric()) <= 1e-10);
  }
}

TEST_CASE("to_contour after from_contour recovers smooth contours up to rigid motion") {
  Rng rng(27);
  for (int trial = 0; trial < 10; ++trial) {
    Contour c;
    const int pts = 400;
    const double a = rng.uniform(1, 2), b = rng.uniform(0.6, 1.2), k = rng.uniform(0, 0.15), rot = rng.uniform(0, 6);
    for (int i = 0; i < pts; ++i) {
      const double t = 2 * kPi * i / pts;
      const double rad = 1 + k * std::sin(2 * t);
      const double x = a * rad * std::cos(t), y = b * rad * std::sin(t);
      c.points.emplace_back(std::cos(rot) * x - std::sin(rot) * y + 3, std::sin(rot) * x + std::cos(rot) * y + 1);
    }
    double perimeter = 0;
    for (std::size_t i = 0; i < c.points.size(); ++i)
      perimeter += (c.points[(i + 1) % c.points.size()] - c.points[i]).norm();
    const Index n = 256;
    const Contour back = to_contour(from_contour(c, n), perimeter / (2 * kPi));
    // pair each output vertex with the arc-length resampled input
    std::vector<Point2> resampled;
    {
      std::vector<double> cum{0};
      for (std::size_t i = 0; i < c.points.size(); ++i)
        cum.push_back(cum.back() + (c.points[(i + 1) % c.points.size()] - c.points[i]).norm());
      std::size_t seg = 0;
      for (Index j = 0; j < n; ++j) {
        const double target = perimeter * static_cast<double>(j) / static_cast<double>(n);
        while (cum[seg + 1] < target) ++seg;
        const double u = (target - cum[seg]) / (cum[seg + 1] - cum[seg]);
        resampled.push_back(c.points[seg] + u * (c.points[(seg + 1) % c.points.size()] - c.points[seg]));
      }
    }
    const Contour moved{testing::rigid_align(back.points, resampled)};
    CHECK(hausdorff_distance(moved, c) <= 0.01 * diameter(c));
  }
}

TEST_CASE("hausdorff and diameter") {
  Contour sq{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}};
  Contour shifted{{{0.5, 0}, {1, 0}, {1, 1}, {0, 1}}};
  CHECK(diameter(sq) == doctest::Approx(std::sqrt(2.0)));
  CHECK(hausdorff_distance(sq, sq) == 0.0);
  // (0,0) against the edge from (0,1) to (0.5,0): the line 2x + y = 1
  CHECK(hausdorff_distance(sq, shifted) == doctest::Approx(1 / std::sqrt(5.0)));
}

TEST_CASE("align_cyclic recovers a shift") {
  Rng rng(28);
  const Vector s = testing::random_shape(rng, 64);
  Vector shifted(64);
  for (Index j = 0; j < 64; ++j) shifted(j) = s((j + 5) % 64) + (j + 5 >= 64 ? 2 * kPi : 0.0);
  shifted.array() -= shifted.mean() - kPi;
  CHECK(aligned_distance(s, shifted) <= 1e-12);
}

TEST_CASE("validate_shape") {
  CHECK_NOTHROW(validate_shape(circle_shape(32)));
  CHECK_THROWS_AS(validate_shape(Shape{Vector(circle_shape(32).theta.array() + 1e-6)}), DegenerateInputError);
  CHECK_THROWS_AS(validate_shape(Shape{Vector::Constant(4, 0.0)}), ParameterError);
}
