#include "framewalk/manifold.hpp"

#include "framewalk/error.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace framewalk {

namespace {

constexpr double kRankTolerance = 1e-12;
constexpr double kSingularRatio = 1e-14;

void require_length(const Vector& v, Index n, const char* what) {
  if (v.size() != n) {
    std::ostringstream msg;
    msg << what << ": length " << v.size() << " does not match metric size " << n;
    throw DimensionError(msg.str());
  }
}

}  // namespace

QuadratureMetric::QuadratureMetric(Vector weights) : weights_(std::move(weights)) {
  if (weights_.size() == 0) throw DimensionError("quadrature metric needs at least one weight");
  for (Index j = 0; j < weights_.size(); ++j) {
    if (!(weights_[j] > 0.0) || !std::isfinite(weights_[j])) {
      throw ParameterError("quadrature weights must be positive and finite");
    }
  }
}

QuadratureMetric QuadratureMetric::uniform_circle(Index n) {
  return QuadratureMetric(Vector::Constant(n, 2.0 * std::numbers::pi / static_cast<double>(n)));
}

QuadratureMetric QuadratureMetric::euclidean(Index n) { return QuadratureMetric(Vector::Ones(n)); }

double inner(const Vector& f, const Vector& g, const QuadratureMetric& metric) {
  require_length(f, metric.size(), "inner");
  require_length(g, metric.size(), "inner");
  return (metric.weights().array() * f.array() * g.array()).sum();
}

double norm(const Vector& f, const QuadratureMetric& metric) { return std::sqrt(inner(f, f, metric)); }

Matrix cross_gram(const Matrix& a, const Matrix& b, const QuadratureMetric& metric) {
  if (a.rows() != metric.size() || b.rows() != metric.size()) {
    throw DimensionError("cross_gram: row count does not match metric size");
  }
  return a.transpose() * metric.weights().asDiagonal() * b;
}

Matrix gram_schmidt(const Matrix& columns, const QuadratureMetric& metric) {
  if (columns.cols() == 0) throw ParameterError("gram_schmidt: empty input");
  if (columns.rows() != metric.size()) throw DimensionError("gram_schmidt: row count does not match metric size");

  const auto& w = metric.weights();
  Matrix q(columns.rows(), columns.cols());
  for (Index j = 0; j < columns.cols(); ++j) {
    Vector v = columns.col(j);
    for (int pass = 0; pass < 2 && j > 0; ++pass) {
      const Vector coeffs = q.leftCols(j).transpose() * w.cwiseProduct(v);
      v.noalias() -= q.leftCols(j) * coeffs;
    }
    const double len = std::sqrt(w.cwiseProduct(v).dot(v));
    if (!(len >= kRankTolerance)) {
      std::ostringstream msg;
      msg << "gram_schmidt: vector " << j << " is linearly dependent on its predecessors (deflated norm "
          << len << ")";
      throw RankError(msg.str(), static_cast<long>(j));
    }
    q.col(j) = v / len;
  }
  return q;
}

std::vector<Vector> gram_schmidt(std::span<const Vector> vectors, const QuadratureMetric& metric) {
  if (vectors.empty()) throw ParameterError("gram_schmidt: empty input");
  Matrix cols(metric.size(), static_cast<Index>(vectors.size()));
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    require_length(vectors[i], metric.size(), "gram_schmidt");
    cols.col(static_cast<Index>(i)) = vectors[i];
  }
  const Matrix q = gram_schmidt(cols, metric);
  std::vector<Vector> out;
  out.reserve(vectors.size());
  for (Index j = 0; j < q.cols(); ++j) out.emplace_back(q.col(j));
  return out;
}

Matrix normal_basis(const Manifold& m, const Vector& p) { return gram_schmidt(m.normal_generators(p), m.metric()); }

double constraint_residual(const Manifold& m, const Vector& p) {
  return (m.constraint_value(p) - m.constraint_target()).lpNorm<Eigen::Infinity>();
}

Vector tangent_project(const Matrix& basis, const QuadratureMetric& metric, const Vector& v) {
  require_length(v, metric.size(), "tangent_project");
  const Vector coeffs = basis.transpose() * metric.weights().cwiseProduct(v);
  return v - basis * coeffs;
}

Matrix tangent_project(const Matrix& basis, const QuadratureMetric& metric, const Matrix& vs) {
  if (vs.rows() != metric.size()) throw DimensionError("tangent_project: row count does not match metric size");
  const Matrix coeffs = basis.transpose() * metric.weights().asDiagonal() * vs;
  return vs - basis * coeffs;
}

Vector tangent_project(const Manifold& m, const Vector& p, const Vector& v) {
  return tangent_project(normal_basis(m, p), m.metric(), v);
}

ProjectionResult project_to_manifold(const Manifold& m, const Vector& p, const ProjectionOptions& options) {
  if (!(options.tol > 0.0)) throw ParameterError("project_to_manifold: tol must be positive");
  if (options.max_iter < 1) throw ParameterError("project_to_manifold: max_iter must be at least 1");
  if (p.size() != m.ambient_dim()) throw DimensionError("project_to_manifold: point has wrong dimension");
  if (!p.allFinite()) throw ParameterError("project_to_manifold: point has non-finite entries");

  const Vector target = m.constraint_target();
  const Index k = m.codim();

  ProjectionResult result;
  result.point = p;
  Vector r = target - m.constraint_value(result.point);
  double residual = r.lpNorm<Eigen::Infinity>();
  result.residuals.push_back(residual);

  while (!(residual <= options.tol)) {
    if (result.iterations == options.max_iter) {
      std::ostringstream msg;
      msg << "projection did not converge in " << options.max_iter << " iterations (residual " << residual << ")";
      throw NonConvergenceError(msg.str(), residual);
    }
    const Matrix basis = normal_basis(m, result.point);
    Matrix jac(k, k);
    for (Index j = 0; j < k; ++j) jac.col(j) = m.constraint_differential(result.point, basis.col(j));

    const Eigen::JacobiSVD<Matrix> svd(jac, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    if (!sv.allFinite() || sv(k - 1) <= kSingularRatio * sv(0)) {
      throw SingularJacobianError("projection: constraint Jacobian on the normal span is singular");
    }
    const Vector c = svd.solve(r);
    result.point.noalias() += basis * c;
    ++result.iterations;

    r = target - m.constraint_value(result.point);
    const double next = r.lpNorm<Eigen::Infinity>();
    result.residuals.push_back(next);
    if (!std::isfinite(next) || (next > residual && next > options.tol)) {
      std::ostringstream msg;
      msg << "projection diverged at iteration " << result.iterations << " (residual " << residual << " -> " << next
          << ")";
      throw NonConvergenceError(msg.str(), next);
    }
    residual = next;
  }
  return result;
}

}  // namespace framewalk
