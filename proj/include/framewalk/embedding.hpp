#pragma once

// Dimension reduction of a discrete curve on a manifold by curve development.
//
//   1. forward-difference tangents d_t, projected onto T_{X_t}M;
//   2. every d_t transported back to X_0 (the pulled-back set);
//   3. the top-L principal directions of that set become the initial frame;
//   4. the frame is transported forward along the curve and each d_t is
//      expressed in it, giving increments dz_t in R^L; z is their running sum.
//
// reconstruct() integrates the development back onto the manifold from
// (x0, frame0, z).

#include "framewalk/transport.hpp"

#include <optional>
#include <vector>

namespace framewalk {

// Pulled-back tangents, all based at index 0. Column t came from step t -> t+1.
struct TangentSet {
  Index base_index = 0;
  Matrix tangents;
  Vector step_norms;  // norms of the tangents before transport

  [[nodiscard]] Index size() const { return tangents.cols(); }
};

struct Spectrum {
  Vector eigenvalues;      // descending, only the numerically nonzero ones
  Vector energy_fraction;  // cumulative share of the total, last entry 1

  [[nodiscard]] Index rank() const { return eigenvalues.size(); }
  // Cumulative energy fraction captured by the first l directions.
  [[nodiscard]] double captured(Index l) const;
};

struct PcaResult {
  Frame frame;
  Spectrum spectrum;
};

struct EmbedOptions {
  bool centered = false;
  // When set, tangents are pulled back through coordinates in this orthonormal
  // basis of T_{X_0}M (transported forward) instead of by backward transport.
  std::optional<Matrix> bookkeeping_basis;
};

struct EmbeddedCurve {
  Vector x0;
  Frame frame0;
  Matrix z;  // T x L, row 0 is zero
  Spectrum spectrum;
  bool centered = false;
  // sum_t |dz_t|^2 / sum_t |d_t|^2 measured on the input curve.
  double captured_energy = 1.0;

  [[nodiscard]] Index frames() const { return z.rows(); }
  [[nodiscard]] Index dim() const { return z.cols(); }
};

// Eigenvalues below this fraction of the largest are treated as zero.
inline constexpr double kSpectrumRankTolerance = 1e-12;

// N x (T-1); column t is the projection of X_{t+1} - X_t onto T_{X_t}M.
Matrix curve_tangents(const CurveBases& bases, const std::vector<Vector>& points);
std::vector<TangentVector> curve_tangents(const Manifold& m, const std::vector<Vector>& points);

// Each backward step inverts the forward transport step exactly (orthogonal
// projection onto the earlier tangent space), then restores the original norm.
TangentSet pull_back_tangents(const CurveBases& bases, const Matrix& tangents);
TangentSet pull_back_tangents(const Manifold& m, const std::vector<Vector>& points);
// Pull back via coordinates against a transported basis of the full tangent
// space at X_0: d_t = E_t c_t with E_t the raw transport of E_0, and
// tau_t = E_0 c_t rescaled to |d_t|. Agrees with pull_back_tangents for any E_0.
TangentSet pull_back_tangents_via_frame(const CurveBases& bases, const Matrix& tangents, const Matrix& basis0);

// Principal directions of the pulled-back set under the metric. When every
// tangent vanishes the spectrum is all zeros and the frame is an arbitrary
// deterministic tangent frame at base_point.
PcaResult pca_frame(const TangentSet& ts, const Manifold& m, const Vector& base_point, Index dim, bool centered = false);

// Development increments dz (T-1 x L) of the tangents against a frame field
// transported forward from frame0 with per-step re-orthonormalization.
Matrix development_increments(const CurveBases& bases, const Matrix& tangents, const Frame& frame0);

EmbeddedCurve embed(const Manifold& m, const std::vector<Vector>& points, Index dim, const EmbedOptions& options = {});

std::vector<Vector> reconstruct(const Manifold& m, const EmbeddedCurve& e, const ProjectionOptions& options = {});

// Random orthonormal basis of the whole tangent space at p (N - k columns).
Matrix random_tangent_basis(const Manifold& m, const Vector& p, unsigned long long seed);

// Throws FormatError unless frame0 is orthonormal within tol, z is finite
// with a zero first row, and all dimensions agree.
void validate_embedding(const EmbeddedCurve& e, const Manifold& m, double tol = 1e-6);

}  // namespace framewalk
