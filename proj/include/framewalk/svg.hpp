#pragma once

#include "framewalk/report.hpp"
#include "framewalk/shape.hpp"

#include <optional>
#include <string>

namespace framewalk {

struct RoundtripFigure {
  Matrix z;  // development to draw; the first two columns are used (time vs z for L = 1)
  std::optional<Contour> original;
  std::optional<Contour> reconstructed;
};

// One SVG document with up to three panels: the development polyline, mean
// reconstruction error against dim, and an original/reconstructed overlay.
std::string roundtrip_svg(const RoundtripReport& report, const RoundtripFigure& figure);

}  // namespace framewalk
