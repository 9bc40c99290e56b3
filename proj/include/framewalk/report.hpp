#pragma once

#include "framewalk/embedding.hpp"

#include <vector>

namespace framewalk {

// Size against which reconstruction errors are normalized: for shapes the L2
// norm of theta minus its mean, otherwise the metric norm of the point.
double point_scale(const Manifold& m, const Vector& p);

struct ReconstructionError {
  std::vector<double> absolute;  // per frame, metric norm of the difference
  std::vector<double> relative;  // absolute / point_scale of the original
  double mean_absolute = 0.0;
  double max_absolute = 0.0;
  double mean_relative = 0.0;
  double max_relative = 0.0;
};

ReconstructionError reconstruction_error(const Manifold& m, const std::vector<Vector>& original,
                                         const std::vector<Vector>& reconstructed);

struct RoundtripRow {
  Index dim = 0;
  double captured_energy = 0.0;  // from the development increments
  double spectrum_energy = 0.0;  // cumulative spectrum fraction at dim
  ReconstructionError error;
  // Contour-space Hausdorff distance relative to the original diameter; only
  // filled in for shape curves.
  double hausdorff_mean = 0.0;
  double hausdorff_max = 0.0;
};

struct RoundtripReport {
  std::vector<RoundtripRow> rows;
  Spectrum spectrum;
  // Mean errors never grow by more than 5% from one requested dim to the next.
  bool errors_nonincreasing = true;
};

inline constexpr double kErrorJitter = 0.05;

RoundtripReport roundtrip_report(const Manifold& m, const std::vector<Vector>& points, const std::vector<Index>& dims,
                                 bool centered = false);

}  // namespace framewalk
