#pragma once
#include <vector>

#include "tropcert/lattice.hpp"
#include "tropcert/rational_lp.hpp"

namespace tropcert {

// min over the point set of <a, v>
Int support_value(const std::vector<IntVector>& pts, const IntVector& v);

// indices attaining the minimum, in input order
std::vector<int> face_indices(const std::vector<IntVector>& pts, const IntVector& v);

// An edge of the convex hull, stored by endpoint indices (a < b) into the
// defining point list.  dir is the primitive difference, sign-normalized.
struct Edge {
  int a = 0, b = 0;
  IntVector dir;
};

// All edges of conv(pts), endpoints being vertices.  A one-dimensional hull
// yields its single extreme segment; a single point yields none.
std::vector<Edge> edges(const std::vector<IntVector>& pts);

// Constraint rows for the closed inner-normal cone of an edge:
// <dir, v> = 0 and <p_k - p_a, v> >= 0 for every other point.
std::vector<LinRow> edge_cone_rows(const std::vector<IntVector>& pts, const Edge& e);

} // namespace tropcert
