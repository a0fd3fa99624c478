#pragma once

// Planar embedding of three pairwise state distances and the SVG error-disk
// figure built on it.

#include <array>
#include <string>

namespace tomo {

struct LabeledPoint {
  std::string label;
  double x = 0.0;
  double y = 0.0;
};

// Three reconstructions placed in the plane so that their pairwise Euclidean
// distances reproduce the given trace distances; disk radii are the
// uncertainty radii in the same units.
struct TriangleEmbedding {
  std::array<LabeledPoint, 3> points;  // O at origin, S on the x-axis, M above
  std::array<double, 3> radii{0.0, 0.0, 0.0};
};

// Law-of-cosines placement: O=(0,0), S=(d_OS,0), M=(x, y>=0). Distances must
// be nonnegative and satisfy the triangle inequality within `slack`.
TriangleEmbedding embed_triangle(double d_OS, double d_OM, double d_SM, double slack = 1e-9);

// Fixed-scale figure (0.1 trace-distance unit = 100 px): one solid circle of
// radius R per point, optionally a dashed circle at R/2, labeled axes in
// trace-distance units. Deterministic output for identical inputs.
std::string render_disk_svg(const TriangleEmbedding& embedding, bool half_radius_disks = false);

}  // namespace tomo
