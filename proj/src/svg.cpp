#include "framewalk/svg.hpp"

#include "framewalk/io.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <vector>

namespace framewalk {

namespace {

constexpr double kPanel = 300.0;
constexpr double kMargin = 20.0;

struct Box {
  double x0 = std::numeric_limits<double>::infinity();
  double y0 = std::numeric_limits<double>::infinity();
  double x1 = -std::numeric_limits<double>::infinity();
  double y1 = -std::numeric_limits<double>::infinity();

  void add(const Point2& p) {
    x0 = std::min(x0, p.x());
    y0 = std::min(y0, p.y());
    x1 = std::max(x1, p.x());
    y1 = std::max(y1, p.y());
  }
};

// Maps data coordinates into a panel, y up. With equal_aspect the two axes share a scale.
class PanelMap {
 public:
  PanelMap(const Box& box, double offset_x, bool equal_aspect) : box_(box), offset_(offset_x) {
    const double inner = kPanel - 2.0 * kMargin;
    const double w = std::max(box.x1 - box.x0, 1e-300);
    const double h = std::max(box.y1 - box.y0, 1e-300);
    sx_ = inner / w;
    sy_ = inner / h;
    if (equal_aspect) sx_ = sy_ = std::min(sx_, sy_);
  }

  [[nodiscard]] std::string operator()(const Point2& p) const {
    const double x = offset_ + kMargin + (p.x() - box_.x0) * sx_;
    const double y = kPanel - kMargin - (p.y() - box_.y0) * sy_;
    return format_real(x) + "," + format_real(y);
  }

 private:
  Box box_;
  double offset_;
  double sx_ = 1.0;
  double sy_ = 1.0;
};

std::string points_attr(const std::vector<Point2>& pts, const PanelMap& map) {
  std::string out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i > 0) out += ' ';
    out += map(pts[i]);
  }
  return out;
}

void open_panel(std::ostringstream& svg, const char* id, const char* title, double offset) {
  svg << "  <g class=\"plot\" id=\"" << id << "\">\n";
  svg << "    <rect x=\"" << offset << "\" y=\"0\" width=\"" << kPanel << "\" height=\"" << kPanel
      << "\" fill=\"none\" stroke=\"#ccc\"/>\n";
  svg << "    <text x=\"" << offset + kMargin << "\" y=\"14\" font-size=\"12\">" << title << "</text>\n";
}

}  // namespace

std::string roundtrip_svg(const RoundtripReport& report, const RoundtripFigure& figure) {
  const bool overlay = figure.original.has_value() && figure.reconstructed.has_value();
  const int panels = overlay ? 3 : 2;

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << panels * kPanel << "\" height=\"" << kPanel
      << "\" viewBox=\"0 0 " << panels * kPanel << ' ' << kPanel << "\">\n";

  {
    std::vector<Point2> pts;
    for (Index t = 0; t < figure.z.rows(); ++t) {
      pts.emplace_back(figure.z.cols() >= 2 ? Point2(figure.z(t, 0), figure.z(t, 1))
                                            : Point2(static_cast<double>(t), figure.z(t, 0)));
    }
    Box box;
    for (const auto& p : pts) box.add(p);
    open_panel(svg, "development", "development", 0.0);
    svg << "    <polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\""
        << points_attr(pts, PanelMap(box, 0.0, figure.z.cols() >= 2)) << "\"/>\n";
    svg << "  </g>\n";
  }

  {
    std::vector<Point2> pts;
    for (const auto& row : report.rows) pts.emplace_back(static_cast<double>(row.dim), row.error.mean_absolute);
    Box box;
    for (const auto& p : pts) box.add(p);
    box.y0 = std::min(box.y0, 0.0);
    open_panel(svg, "error", "mean error vs dim", kPanel);
    svg << "    <polyline fill=\"none\" stroke=\"#d62728\" stroke-width=\"1.5\" points=\""
        << points_attr(pts, PanelMap(box, kPanel, false)) << "\"/>\n";
    svg << "  </g>\n";
  }

  if (overlay) {
    Box box;
    for (const auto& p : figure.original->points) box.add(p);
    for (const auto& p : figure.reconstructed->points) box.add(p);
    const PanelMap map(box, 2.0 * kPanel, true);
    open_panel(svg, "overlay", "original / reconstructed", 2.0 * kPanel);
    svg << "    <polygon fill=\"none\" stroke=\"#000\" stroke-width=\"1.5\" points=\""
        << points_attr(figure.original->points, map) << "\"/>\n";
    svg << "    <polygon fill=\"none\" stroke=\"#d62728\" stroke-dasharray=\"4 2\" points=\""
        << points_attr(figure.reconstructed->points, map) << "\"/>\n";
    svg << "  </g>\n";
  }

  svg << "</svg>\n";
  return svg.str();
}

}  // namespace framewalk
