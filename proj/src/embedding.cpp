#include "framewalk/embedding.hpp"

#include "framewalk/error.hpp"
#include "framewalk/random.hpp"

#include <cmath>
#include <sstream>

namespace framewalk {

namespace {

constexpr double kSignTieTolerance = 1e-9;

// Largest-magnitude coordinate positive; among near-ties the lowest index wins.
void fix_sign(Eigen::Ref<Vector> v) {
  const double peak = v.cwiseAbs().maxCoeff();
  for (Index j = 0; j < v.size(); ++j) {
    if (std::abs(v[j]) >= (1.0 - kSignTieTolerance) * peak) {
      if (v[j] < 0.0) v = -v;
      return;
    }
  }
}

void require_curve(const Manifold& m, const std::vector<Vector>& points) {
  if (points.size() < 2) throw ParameterError("curve needs at least 2 points");
  for (std::size_t t = 0; t < points.size(); ++t) {
    if (points[t].size() != m.ambient_dim()) {
      throw DimensionError("point " + std::to_string(t) + " has the wrong dimension");
    }
    if (!points[t].allFinite()) throw ParameterError("point " + std::to_string(t) + " has non-finite entries");
  }
}

// Deterministic orthonormal tangent frame built from projected coordinate axes.
Matrix axis_frame(const Manifold& m, const Vector& base_point, Index dim) {
  const Matrix basis = normal_basis(m, base_point);
  const auto& metric = m.metric();
  const Index n = m.ambient_dim();
  Matrix frame(n, dim);
  Index filled = 0;
  for (Index j = 0; j < n && filled < dim; ++j) {
    Vector v = tangent_project(basis, metric, Vector(Vector::Unit(n, j)));
    for (int pass = 0; pass < 2; ++pass) {
      const Vector c = frame.leftCols(filled).transpose() * metric.weights().cwiseProduct(v);
      v -= frame.leftCols(filled) * c;
    }
    const double len = norm(v, metric);
    if (len < 1e-8) continue;
    frame.col(filled++) = v / len;
  }
  if (filled < dim) {
    throw RankError("dimension " + std::to_string(dim) + " exceeds the tangent space dimension", static_cast<long>(filled));
  }
  return frame;
}

}  // namespace

double Spectrum::captured(Index l) const {
  if (l <= 0 || energy_fraction.size() == 0) return 0.0;
  return energy_fraction[std::min(l, energy_fraction.size()) - 1];
}

Matrix curve_tangents(const CurveBases& bases, const std::vector<Vector>& points) {
  const Index steps = static_cast<Index>(points.size()) - 1;
  if (steps < 1) throw ParameterError("curve needs at least 2 points");
  Matrix d(points.front().size(), steps);
  for (Index t = 0; t < steps; ++t) {
    d.col(t) = tangent_project(bases.at(t), bases.metric(),
                               Vector(points[static_cast<std::size_t>(t + 1)] - points[static_cast<std::size_t>(t)]));
  }
  return d;
}

std::vector<TangentVector> curve_tangents(const Manifold& m, const std::vector<Vector>& points) {
  require_curve(m, points);
  const CurveBases bases(m, points);
  const Matrix d = curve_tangents(bases, points);
  std::vector<TangentVector> out;
  out.reserve(static_cast<std::size_t>(d.cols()));
  for (Index t = 0; t < d.cols(); ++t) out.push_back(TangentVector{t, d.col(t)});
  return out;
}

TangentSet pull_back_tangents(const CurveBases& bases, const Matrix& tangents) {
  const Index steps = tangents.cols();
  TangentSet ts;
  ts.tangents = tangents;
  ts.step_norms = (tangents.cwiseProduct(bases.metric().weights().asDiagonal() * tangents)).colwise().sum().cwiseSqrt();
  const Vector& w = bases.metric().weights();
  // Backward sweep: before iteration i, columns i.. sit at index i. A forward
  // step only adds normal components at its start point, so its exact inverse
  // is the orthogonal projection onto that tangent space. Each step rescales
  // the moved columns back to their original norms.
  for (Index i = steps - 1; i >= 1; --i) {
    auto moved = ts.tangents.rightCols(steps - i);
    const Matrix& b = bases.at(i - 1);
    moved -= b * (b.transpose() * w.asDiagonal() * moved);
    for (Index j = 0; j < moved.cols(); ++j) {
      const double len = std::sqrt(moved.col(j).cwiseProduct(w.cwiseProduct(moved.col(j))).sum());
      if (len > 0.0) moved.col(j) *= ts.step_norms(i + j) / len;
    }
  }
  return ts;
}

TangentSet pull_back_tangents(const Manifold& m, const std::vector<Vector>& points) {
  require_curve(m, points);
  const CurveBases bases(m, points);
  return pull_back_tangents(bases, curve_tangents(bases, points));
}

TangentSet pull_back_tangents_via_frame(const CurveBases& bases, const Matrix& tangents, const Matrix& basis0) {
  const auto& metric = bases.metric();
  TangentSet ts;
  ts.tangents.resize(tangents.rows(), tangents.cols());
  ts.step_norms = (tangents.cwiseProduct(metric.weights().asDiagonal() * tangents)).colwise().sum().cwiseSqrt();
  Matrix frame = basis0;
  for (Index t = 0; t < tangents.cols(); ++t) {
    if (t > 0) {
      try {
        frame = transport_step(bases.at(t - 1), bases.at(t), metric, frame);
      } catch (Error& e) {
        e.add_context("segment " + std::to_string(t - 1));
        throw;
      }
    }
    // coordinates of d_t against the transported basis, carried back through basis0
    const Matrix wf = metric.weights().asDiagonal() * frame;
    const Vector coords = (frame.transpose() * wf).ldlt().solve(wf.transpose() * tangents.col(t));
    Vector tau = basis0 * coords;
    const double len = norm(tau, metric);
    if (len > 0.0) tau *= ts.step_norms(t) / len;
    ts.tangents.col(t) = tau;
  }
  return ts;
}

PcaResult pca_frame(const TangentSet& ts, const Manifold& m, const Vector& base_point, Index dim, bool centered) {
  if (dim < 1) throw ParameterError("embedding dimension must be at least 1");
  const auto& metric = m.metric();
  const Index n = ts.tangents.rows();
  const Index count = ts.tangents.cols();
  if (n != metric.size()) throw DimensionError("pca_frame: tangent length does not match the manifold");
  if (count < 1) throw ParameterError("pca_frame: empty tangent set");

  Matrix x = ts.tangents;
  if (centered) x.colwise() -= x.rowwise().mean();

  const Vector sqrt_w = metric.weights().cwiseSqrt();
  Vector lambda;
  Matrix directions;  // unnormalized principal directions, strongest first
  if (count <= n) {
    const Matrix gram = x.transpose() * metric.weights().asDiagonal() * x;
    const Eigen::SelfAdjointEigenSolver<Matrix> eig(gram);
    lambda = eig.eigenvalues().reverse();
    directions = x * eig.eigenvectors().rowwise().reverse();
  } else {
    const Matrix y = sqrt_w.asDiagonal() * x;
    const Matrix cov = y * y.transpose();
    const Eigen::SelfAdjointEigenSolver<Matrix> eig(cov);
    lambda = eig.eigenvalues().reverse();
    directions = sqrt_w.cwiseInverse().asDiagonal() * eig.eigenvectors().rowwise().reverse();
  }
  lambda = lambda.cwiseMax(0.0);

  PcaResult result;
  result.frame.base_index = ts.base_index;
  const double top = lambda.size() > 0 ? lambda[0] : 0.0;
  if (!(top > 0.0)) {
    result.spectrum.eigenvalues = Vector::Zero(lambda.size());
    result.spectrum.energy_fraction = Vector::Ones(lambda.size());
    result.frame.vectors = axis_frame(m, base_point, dim);
    return result;
  }

  Index rank = 0;
  while (rank < lambda.size() && lambda[rank] > kSpectrumRankTolerance * top) ++rank;
  if (dim > rank) {
    std::ostringstream msg;
    msg << "embedding dimension " << dim << " exceeds the numerical rank of the tangent set (max L = " << rank << ")";
    throw RankError(msg.str(), static_cast<long>(rank));
  }

  result.spectrum.eigenvalues = lambda.head(rank);
  result.spectrum.energy_fraction.resize(rank);
  const double total = result.spectrum.eigenvalues.sum();
  double running = 0.0;
  for (Index i = 0; i < rank; ++i) {
    running += result.spectrum.eigenvalues[i];
    result.spectrum.energy_fraction[i] = running / total;
  }
  result.spectrum.energy_fraction[rank - 1] = 1.0;

  Matrix frame = gram_schmidt(Matrix(directions.leftCols(dim)), metric);
  for (Index i = 0; i < dim; ++i) fix_sign(frame.col(i));
  result.frame.vectors = std::move(frame);
  return result;
}

Matrix development_increments(const CurveBases& bases, const Matrix& tangents, const Frame& frame0) {
  const auto& metric = bases.metric();
  Matrix dz(tangents.cols(), frame0.size());
  Matrix frame = frame0.vectors;
  for (Index t = 0; t < tangents.cols(); ++t) {
    if (t > 0) {
      try {
        frame = gram_schmidt(transport_step(bases.at(t - 1), bases.at(t), metric, frame), metric);
      } catch (Error& e) {
        e.add_context("segment " + std::to_string(t - 1));
        throw;
      }
    }
    dz.row(t) = (frame.transpose() * metric.weights().cwiseProduct(tangents.col(t))).transpose();
  }
  return dz;
}

EmbeddedCurve embed(const Manifold& m, const std::vector<Vector>& points, Index dim, const EmbedOptions& options) {
  if (dim < 1) throw ParameterError("embedding dimension must be at least 1");
  require_curve(m, points);

  const CurveBases bases(m, points);
  const Matrix tangents = curve_tangents(bases, points);
  const TangentSet ts = options.bookkeeping_basis ? pull_back_tangents_via_frame(bases, tangents, *options.bookkeeping_basis)
                                                  : pull_back_tangents(bases, tangents);
  PcaResult pca = pca_frame(ts, m, points.front(), dim, options.centered);
  const Matrix dz = development_increments(bases, tangents, pca.frame);

  EmbeddedCurve e;
  e.x0 = points.front();
  e.frame0 = std::move(pca.frame);
  e.spectrum = std::move(pca.spectrum);
  e.centered = options.centered;
  e.z = Matrix::Zero(static_cast<Index>(points.size()), dim);
  for (Index t = 0; t < dz.rows(); ++t) e.z.row(t + 1) = e.z.row(t) + dz.row(t);

  const double total = ts.step_norms.squaredNorm();
  e.captured_energy = total > 0.0 ? dz.squaredNorm() / total : 1.0;
  return e;
}

std::vector<Vector> reconstruct(const Manifold& m, const EmbeddedCurve& e, const ProjectionOptions& options) {
  validate_embedding(e, m);
  const auto& metric = m.metric();
  std::vector<Vector> out;
  out.reserve(static_cast<std::size_t>(e.frames()));
  out.push_back(e.x0);

  Matrix frame = e.frame0.vectors;
  Matrix basis = normal_basis(m, e.x0);
  for (Index k = 1; k < e.frames(); ++k) {
    try {
      const Vector increment = (e.z.row(k) - e.z.row(k - 1)).transpose();
      Vector next = project_to_manifold(m, out.back() + frame * increment, options).point;
      if (k + 1 < e.frames()) {
        Matrix next_basis = normal_basis(m, next);
        frame = gram_schmidt(transport_step(basis, next_basis, metric, frame), metric);
        basis = std::move(next_basis);
      }
      out.push_back(std::move(next));
    } catch (Error& err) {
      err.add_context("reconstruction step " + std::to_string(k));
      throw;
    }
  }
  return out;
}

Matrix random_tangent_basis(const Manifold& m, const Vector& p, unsigned long long seed) {
  const Index n = m.ambient_dim();
  const Index dim = n - m.codim();
  Rng rng(seed);
  Matrix g(n, dim);
  for (Index j = 0; j < dim; ++j) {
    for (Index i = 0; i < n; ++i) g(i, j) = rng.normal();
  }
  const Matrix basis = normal_basis(m, p);
  return gram_schmidt(tangent_project(basis, m.metric(), g), m.metric());
}

void validate_embedding(const EmbeddedCurve& e, const Manifold& m, double tol) {
  const Index n = m.ambient_dim();
  if (e.x0.size() != n) throw FormatError("embedding: x0 has length " + std::to_string(e.x0.size()));
  if (e.frame0.vectors.rows() != n) throw FormatError("embedding: frame0 vectors have the wrong length");
  if (e.frame0.vectors.cols() != e.z.cols()) throw FormatError("embedding: frame0 size does not match dim");
  if (e.z.rows() < 2) throw FormatError("embedding: needs at least 2 frames");
  if (e.z.cols() < 1) throw FormatError("embedding: dim must be at least 1");
  if (!e.z.allFinite() || !e.x0.allFinite() || !e.frame0.vectors.allFinite()) {
    throw FormatError("embedding: non-finite values");
  }
  if (e.z.row(0).cwiseAbs().maxCoeff() != 0.0) throw FormatError("embedding: first row of z must be zero");
  const double defect = orthonormality_defect(e.frame0, m.metric());
  if (!(defect <= tol)) {
    std::ostringstream msg;
    msg << "embedding: frame0 is not orthonormal (defect " << defect << ")";
    throw FormatError(msg.str());
  }
}

}  // namespace framewalk
