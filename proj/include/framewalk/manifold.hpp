#pragma once

// Level-set embedded manifolds M = {p : c(p) = target} in a weighted
// inner-product space. Everything here is stateless; a Manifold instance is
// an immutable description and may be shared across threads.

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace framewalk {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

// Diagonal quadrature weights defining <f, g> = sum_j w_j f_j g_j.
class QuadratureMetric {
 public:
  explicit QuadratureMetric(Vector weights);

  // N equal weights 2*pi/N: the L2 pairing on [0, 2*pi].
  static QuadratureMetric uniform_circle(Index n);
  // N unit weights: the Euclidean dot product.
  static QuadratureMetric euclidean(Index n);

  [[nodiscard]] Index size() const { return weights_.size(); }
  [[nodiscard]] const Vector& weights() const { return weights_; }

 private:
  Vector weights_;
};

double inner(const Vector& f, const Vector& g, const QuadratureMetric& metric);
double norm(const Vector& f, const QuadratureMetric& metric);

// Gram matrix G_ij = <a_i, b_j> between the columns of a and b.
Matrix cross_gram(const Matrix& a, const Matrix& b, const QuadratureMetric& metric);

// Classical Gram-Schmidt with one re-orthogonalization pass, order preserving.
// Throws RankError naming the first column whose deflated norm is < 1e-12.
Matrix gram_schmidt(const Matrix& columns, const QuadratureMetric& metric);
std::vector<Vector> gram_schmidt(std::span<const Vector> vectors, const QuadratureMetric& metric);

class Manifold {
 public:
  virtual ~Manifold() = default;

  [[nodiscard]] virtual Index ambient_dim() const = 0;
  [[nodiscard]] virtual Index codim() const = 0;
  [[nodiscard]] virtual const QuadratureMetric& metric() const = 0;
  [[nodiscard]] virtual Vector constraint_target() const = 0;
  [[nodiscard]] virtual Vector constraint_value(const Vector& p) const = 0;
  // Directional derivative of constraint_value at p along f.
  [[nodiscard]] virtual Vector constraint_differential(const Vector& p, const Vector& f) const = 0;
  // ambient_dim x codim; columns span the normal space at p.
  [[nodiscard]] virtual Matrix normal_generators(const Vector& p) const = 0;
};

// Orthonormal basis (columns) of the normal space at p.
Matrix normal_basis(const Manifold& m, const Vector& p);

// Max-norm distance of the constraint value from the target.
double constraint_residual(const Manifold& m, const Vector& p);

Vector tangent_project(const Matrix& basis, const QuadratureMetric& metric, const Vector& v);
Matrix tangent_project(const Matrix& basis, const QuadratureMetric& metric, const Matrix& vs);
Vector tangent_project(const Manifold& m, const Vector& p, const Vector& v);

struct ProjectionOptions {
  double tol = 1e-10;
  int max_iter = 50;
};

struct ProjectionResult {
  Vector point;
  int iterations = 0;
  // residuals[i] is the constraint residual before iteration i; the last entry
  // is the residual of the returned point.
  std::vector<double> residuals;
};

// Newton iteration restricted to the normal span: at each step solve
// J c = target - c(q) with J_ij = dc(q)[B_j]_i and set q <- q + sum_j c_j B_j.
// Throws NonConvergenceError when max_iter is exhausted or the residual grows,
// and SingularJacobianError when J cannot be inverted.
ProjectionResult project_to_manifold(const Manifold& m, const Vector& p, const ProjectionOptions& options = {});

}  // namespace framewalk
