#include "tomo/figures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace tomo {

TriangleEmbedding embed_triangle(double d_OS, double d_OM, double d_SM, double slack) {
  if (d_OS < 0.0 || d_OM < 0.0 || d_SM < 0.0)
    throw std::invalid_argument("embed_triangle: distances must be nonnegative");
  if (d_OS + d_OM + slack < d_SM || d_OS + d_SM + slack < d_OM || d_OM + d_SM + slack < d_OS)
    throw std::invalid_argument("embed_triangle: triangle inequality violated");

  TriangleEmbedding embedding;
  embedding.points[0] = {"O", 0.0, 0.0};
  embedding.points[1] = {"S", d_OS, 0.0};
  double x = 0.0;
  double y = 0.0;
  if (d_OS > 0.0) {
    x = (d_OS * d_OS + d_OM * d_OM - d_SM * d_SM) / (2.0 * d_OS);
    y = std::sqrt(std::max(0.0, d_OM * d_OM - x * x));
  } else {
    // O and S coincide; place M straight up at its common distance.
    x = 0.0;
    y = d_OM;
  }
  embedding.points[2] = {"M", x, y};
  return embedding;
}

namespace {

// Fixed-point decimal keeps the output byte-identical across platforms.
std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

}  // namespace

std::string render_disk_svg(const TriangleEmbedding& embedding, bool half_radius_disks) {
  constexpr double kScale = 1000.0;  // 0.1 trace-distance unit = 100 px
  constexpr double kMargin = 60.0;

  double max_extent = 0.0;
  for (size_t i = 0; i < embedding.points.size(); ++i) {
    const LabeledPoint& p = embedding.points[i];
    const double r = embedding.radii[i];
    max_extent = std::max({max_extent, std::abs(p.x) + r, std::abs(p.y) + r});
  }
  const double span = kScale * std::max(max_extent, 0.05);
  const double size = 2.0 * (span + kMargin);
  const double cx = size / 2.0;
  const double cy = size / 2.0;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(size) << "\" height=\""
      << fmt(size) << "\" viewBox=\"0 0 " << fmt(size) << " " << fmt(size) << "\">\n";
  svg << " <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  // Axes through the centroid origin, labeled in trace-distance units.
  svg << " <line x1=\"0\" y1=\"" << fmt(cy) << "\" x2=\"" << fmt(size) << "\" y2=\"" << fmt(cy)
      << "\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";
  svg << " <line x1=\"" << fmt(cx) << "\" y1=\"0\" x2=\"" << fmt(cx) << "\" y2=\"" << fmt(size)
      << "\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";
  svg << " <text x=\"" << fmt(size - kMargin) << "\" y=\"" << fmt(cy - 8.0)
      << "\" font-size=\"14\" fill=\"#888888\">0.1 unit = 100 px</text>\n";

  static const char* kColors[3] = {"#1f77b4", "#d62728", "#2ca02c"};
  for (size_t i = 0; i < embedding.points.size(); ++i) {
    const LabeledPoint& p = embedding.points[i];
    const double px = cx + kScale * p.x;
    const double py = cy - kScale * p.y;  // SVG y grows downward
    const double pr = kScale * embedding.radii[i];
    svg << " <circle cx=\"" << fmt(px) << "\" cy=\"" << fmt(py) << "\" r=\"" << fmt(pr)
        << "\" fill=\"" << kColors[i] << "\" fill-opacity=\"0.15\" stroke=\"" << kColors[i]
        << "\" stroke-width=\"2\"/>\n";
    if (half_radius_disks) {
      svg << " <circle cx=\"" << fmt(px) << "\" cy=\"" << fmt(py) << "\" r=\"" << fmt(pr / 2.0)
          << "\" fill=\"none\" stroke=\"" << kColors[i]
          << "\" stroke-width=\"1.5\" stroke-dasharray=\"6,4\"/>\n";
    }
    svg << " <circle cx=\"" << fmt(px) << "\" cy=\"" << fmt(py)
        << "\" r=\"3\" fill=\"" << kColors[i] << "\"/>\n";
    svg << " <text x=\"" << fmt(px + 6.0) << "\" y=\"" << fmt(py - 6.0)
        << "\" font-size=\"16\" fill=\"" << kColors[i] << "\">" << p.label << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace tomo
