#pragma once

// Discrete parallel transport under the connection induced by projecting the
// ambient derivative onto the tangent space. One step from p to q moves a
// tangent vector v along the normal directions of p until it is tangent at q:
//   v' = v + B(p) a,   A a = -B(q)^T W v,   A = B(q)^T W B(p).

#include "framewalk/manifold.hpp"

#include <vector>

namespace framewalk {

struct TangentVector {
  Index base_index = 0;
  Vector values;
};

// L tangent vectors (columns) at one base point.
struct Frame {
  Index base_index = 0;
  Matrix vectors;

  [[nodiscard]] Index size() const { return vectors.cols(); }
};

// cond(A) = max(sigma_max, 1) / sigma_min above this raises StepTooLargeError.
// Identical bases (p == q) make the step the exact identity.
inline constexpr double kMaxStepCondition = 1e8;

// Orthonormal normal bases for every point of a discrete curve, computed once
// and shared by all transports along it.
class CurveBases {
 public:
  CurveBases(const Manifold& m, const std::vector<Vector>& points);

  [[nodiscard]] const Matrix& at(Index i) const { return bases_[static_cast<std::size_t>(i)]; }
  [[nodiscard]] Index size() const { return static_cast<Index>(bases_.size()); }
  [[nodiscard]] const QuadratureMetric& metric() const { return *metric_; }

 private:
  const QuadratureMetric* metric_;
  std::vector<Matrix> bases_;
};

// Transports every column of vs from the point with normal basis from_basis
// to the point with normal basis to_basis.
Matrix transport_step(const Matrix& from_basis, const Matrix& to_basis, const QuadratureMetric& metric,
                      const Matrix& vs);
void transport_step_inplace(const Matrix& from_basis, const Matrix& to_basis, const QuadratureMetric& metric,
                            Eigen::Ref<Matrix> vs);
Vector transport_step(const Matrix& from_basis, const Matrix& to_basis, const QuadratureMetric& metric,
                      const Vector& v);
Vector transport_step(const Manifold& m, const Vector& p, const Vector& q, const Vector& v);

// Composes steps between consecutive indices, forwards or backwards. With
// renormalize, each step rescales to the original norm (single vectors) or
// re-orthonormalizes (matrices, Gram-Schmidt in column order).
Matrix transport_along(const CurveBases& bases, const Matrix& vs, Index from, Index to, bool renormalize = false);
TangentVector transport_along(const CurveBases& bases, const TangentVector& v, Index to, bool renormalize = false);
TangentVector transport_along(const Manifold& m, const std::vector<Vector>& curve, const TangentVector& v, Index to,
                              bool renormalize = false);

// Frames at every index obtained by transporting f0 forward from index 0.
std::vector<Frame> parallel_frame(const CurveBases& bases, const Frame& f0, bool renormalize = false);
std::vector<Frame> parallel_frame(const Manifold& m, const std::vector<Vector>& curve, const Frame& f0,
                                  bool renormalize = false);

// Max-abs deviation of the frame's Gram matrix from the identity.
double orthonormality_defect(const Frame& f, const QuadratureMetric& metric);

}  // namespace framewalk
