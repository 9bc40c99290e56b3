#include "framewalk/report.hpp"

#include "framewalk/error.hpp"
#include "framewalk/shape.hpp"

#include <algorithm>

namespace framewalk {

double point_scale(const Manifold& m, const Vector& p) {
  if (dynamic_cast<const ShapeManifold*>(&m) != nullptr) {
    return norm(Vector(p.array() - p.mean()), m.metric());
  }
  return norm(p, m.metric());
}

ReconstructionError reconstruction_error(const Manifold& m, const std::vector<Vector>& original,
                                         const std::vector<Vector>& reconstructed) {
  if (original.size() != reconstructed.size() || original.empty()) {
    throw DimensionError("reconstruction_error: sequences differ in length");
  }
  ReconstructionError err;
  for (std::size_t t = 0; t < original.size(); ++t) {
    const double abs_err = norm(Vector(reconstructed[t] - original[t]), m.metric());
    const double scale = point_scale(m, original[t]);
    err.absolute.push_back(abs_err);
    err.relative.push_back(scale > 0.0 ? abs_err / scale : abs_err);
  }
  const auto count = static_cast<double>(original.size());
  for (std::size_t t = 0; t < original.size(); ++t) {
    err.mean_absolute += err.absolute[t] / count;
    err.mean_relative += err.relative[t] / count;
    err.max_absolute = std::max(err.max_absolute, err.absolute[t]);
    err.max_relative = std::max(err.max_relative, err.relative[t]);
  }
  return err;
}

RoundtripReport roundtrip_report(const Manifold& m, const std::vector<Vector>& points, const std::vector<Index>& dims,
                                 bool centered) {
  if (dims.empty()) throw ParameterError("roundtrip: no dimensions requested");
  for (Index l : dims) {
    if (l < 1) throw ParameterError("roundtrip: dimension " + std::to_string(l) + " is not allowed (must be >= 1)");
  }
  const bool shapes = dynamic_cast<const ShapeManifold*>(&m) != nullptr;

  std::vector<Contour> originals;
  std::vector<double> diameters;
  if (shapes) {
    for (const auto& p : points) {
      originals.push_back(to_contour(p));
      diameters.push_back(diameter(originals.back()));
    }
  }

  RoundtripReport report;
  EmbedOptions options;
  options.centered = centered;
  for (Index l : dims) {
    const EmbeddedCurve e = embed(m, points, l, options);
    if (report.rows.empty()) report.spectrum = e.spectrum;
    const std::vector<Vector> rec = reconstruct(m, e);

    RoundtripRow row;
    row.dim = l;
    row.captured_energy = e.captured_energy;
    row.spectrum_energy = e.spectrum.captured(l);
    row.error = reconstruction_error(m, points, rec);
    if (shapes) {
      for (std::size_t t = 0; t < points.size(); ++t) {
        const double h = hausdorff_distance(originals[t], to_contour(rec[t])) / diameters[t];
        row.hausdorff_mean += h / static_cast<double>(points.size());
        row.hausdorff_max = std::max(row.hausdorff_max, h);
      }
    }
    if (!report.rows.empty()) {
      const double previous = report.rows.back().error.mean_absolute;
      if (row.error.mean_absolute > (1.0 + kErrorJitter) * previous + 1e-12) report.errors_nonincreasing = false;
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace framewalk
