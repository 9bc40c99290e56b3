#include "framewalk/transport.hpp"

#include "framewalk/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace framewalk {

namespace {

void require_index(Index i, Index size, const char* what) {
  if (i < 0 || i >= size) {
    std::ostringstream msg;
    msg << what << ": index " << i << " outside curve of length " << size;
    throw ParameterError(msg.str());
  }
}

}  // namespace

CurveBases::CurveBases(const Manifold& m, const std::vector<Vector>& points) : metric_(&m.metric()) {
  bases_.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    try {
      bases_.push_back(normal_basis(m, points[i]));
    } catch (Error& e) {
      e.add_context("point " + std::to_string(i));
      throw;
    }
  }
}

void transport_step_inplace(const Matrix& from_basis, const Matrix& to_basis, const QuadratureMetric& metric,
                            Eigen::Ref<Matrix> vs) {
  if (vs.rows() != metric.size() || from_basis.rows() != metric.size() || to_basis.rows() != metric.size()) {
    throw DimensionError("transport_step: dimension mismatch");
  }
  if (from_basis == to_basis) return;
  // B(p) is read as the normal basis at the start of the step.
  const Matrix weighted_to = metric.weights().asDiagonal() * to_basis;
  const Matrix a = weighted_to.transpose() * from_basis;

  const Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  // Both bases are orthonormal, so |A| <= 1; measure against that unit scale
  // so that a 1x1 A near zero is caught as well.
  const double smallest = sv(sv.size() - 1);
  const double cond = smallest > 0.0 ? std::max(sv(0), 1.0) / smallest : INFINITY;
  if (!(cond <= kMaxStepCondition)) {
    std::ostringstream msg;
    msg << "transport step too large: cond(A) = " << cond;
    throw StepTooLargeError(msg.str(), cond);
  }
  const Matrix c = weighted_to.transpose() * vs;
  const Matrix coeffs = svd.solve(c);
  vs.noalias() -= from_basis * coeffs;
}

Matrix transport_step(const Matrix& from_basis, const Matrix& to_basis, const QuadratureMetric& metric,
                      const Matrix& vs) {
  Matrix out = vs;
  transport_step_inplace(from_basis, to_basis, metric, out);
  return out;
}

Vector transport_step(const Matrix& from_basis, const Matrix& to_basis, const QuadratureMetric& metric,
                      const Vector& v) {
  return transport_step(from_basis, to_basis, metric, Matrix(v));
}

Vector transport_step(const Manifold& m, const Vector& p, const Vector& q, const Vector& v) {
  return transport_step(normal_basis(m, p), normal_basis(m, q), m.metric(), v);
}

Matrix transport_along(const CurveBases& bases, const Matrix& vs, Index from, Index to, bool renormalize) {
  require_index(from, bases.size(), "transport_along");
  require_index(to, bases.size(), "transport_along");
  const auto& metric = bases.metric();
  const auto& w = metric.weights();

  Vector norms;
  if (renormalize && vs.cols() == 1) norms = (vs.cwiseProduct(w.asDiagonal() * vs)).colwise().sum().cwiseSqrt();

  Matrix current = vs;
  const Index dir = to >= from ? 1 : -1;
  for (Index i = from; i != to; i += dir) {
    try {
      current = transport_step(bases.at(i), bases.at(i + dir), metric, current);
    } catch (Error& e) {
      e.add_context("segment " + std::to_string(std::min(i, i + dir)));
      throw;
    }
    if (!renormalize) continue;
    if (current.cols() == 1) {
      const double len = std::sqrt(w.cwiseProduct(current.col(0)).dot(current.col(0)));
      if (len > 0.0) current *= norms[0] / len;
    } else {
      current = gram_schmidt(current, metric);
    }
  }
  return current;
}

TangentVector transport_along(const CurveBases& bases, const TangentVector& v, Index to, bool renormalize) {
  return TangentVector{to, transport_along(bases, Matrix(v.values), v.base_index, to, renormalize).col(0)};
}

TangentVector transport_along(const Manifold& m, const std::vector<Vector>& curve, const TangentVector& v, Index to,
                              bool renormalize) {
  const CurveBases bases(m, curve);
  return transport_along(bases, v, to, renormalize);
}

std::vector<Frame> parallel_frame(const CurveBases& bases, const Frame& f0, bool renormalize) {
  if (f0.base_index != 0) throw ParameterError("parallel_frame: initial frame must sit at index 0");
  std::vector<Frame> frames;
  frames.reserve(static_cast<std::size_t>(bases.size()));
  frames.push_back(f0);
  for (Index t = 1; t < bases.size(); ++t) {
    frames.push_back(Frame{t, transport_along(bases, frames.back().vectors, t - 1, t, renormalize)});
  }
  return frames;
}

std::vector<Frame> parallel_frame(const Manifold& m, const std::vector<Vector>& curve, const Frame& f0,
                                  bool renormalize) {
  const CurveBases bases(m, curve);
  return parallel_frame(bases, f0, renormalize);
}

double orthonormality_defect(const Frame& f, const QuadratureMetric& metric) {
  const Matrix g = cross_gram(f.vectors, f.vectors, metric);
  return (g - Matrix::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
}

}  // namespace framewalk
