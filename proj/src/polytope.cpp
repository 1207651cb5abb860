#include "tropcert/polytope.hpp"

#include <algorithm>

#include "tropcert/error.hpp"

namespace tropcert {

Int support_value(const std::vector<IntVector>& pts, const IntVector& v) {
  if (pts.empty()) throw Error("support of an empty point set");
  Int best = dot(pts[0], v);
  for (size_t i = 1; i < pts.size(); ++i) {
    Int d = dot(pts[i], v);
    if (d < best) best = d;
  }
  return best;
}

std::vector<int> face_indices(const std::vector<IntVector>& pts, const IntVector& v) {
  Int best = support_value(pts, v);
  std::vector<int> out;
  for (size_t i = 0; i < pts.size(); ++i)
    if (dot(pts[i], v) == best) out.push_back((int)i);
  return out;
}

namespace {

// position of p relative to the ray a + t*dir; returns false if off the line
bool line_parameter(const IntVector& a, const IntVector& dir, const IntVector& p, Rat& t) {
  int n = (int)a.size();
  int pivot = -1;
  for (int i = 0; i < n; ++i)
    if (dir[i] != 0) {
      pivot = i;
      break;
    }
  t = Rat(p[pivot] - a[pivot], dir[pivot]);
  t.canonicalize();
  for (int i = 0; i < n; ++i) {
    Rat lhs(p[i] - a[i]);
    if (lhs != t * Rat(dir[i])) return false;
  }
  return true;
}

} // namespace

std::vector<Edge> edges(const std::vector<IntVector>& pts) {
  std::vector<Edge> out;
  int m = (int)pts.size();
  if (m < 2) return out;
  int n = (int)pts[0].size();
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      IntVector d(n);
      bool same = true;
      for (int k = 0; k < n; ++k) {
        d[k] = pts[j][k] - pts[i][k];
        if (d[k] != 0) same = false;
      }
      if (same) throw Error("duplicate points in support");
      IntVector dir = gcd_normalize(d);

      // i and j must be the extreme pair of their collinear class
      bool extreme = true;
      std::vector<bool> on_line(m, false);
      on_line[i] = on_line[j] = true;
      for (int k = 0; k < m && extreme; ++k) {
        if (k == i || k == j) continue;
        Rat t;
        if (line_parameter(pts[i], d, pts[k], t)) {
          on_line[k] = true;
          if (t < 0 || t > 1) extreme = false;
        }
      }
      if (!extreme) continue;

      std::vector<LinRow> rows;
      rows.push_back(make_row(d, Rel::EQ, Rat(0)));
      bool any = false;
      for (int k = 0; k < m; ++k) {
        if (on_line[k]) continue;
        IntVector diff(n);
        for (int c = 0; c < n; ++c) diff[c] = pts[k][c] - pts[i][c];
        rows.push_back(make_row(diff, Rel::GE, Rat(1)));
        any = true;
      }
      if (any && !rational_feasible(n, rows)) continue;
      out.push_back(Edge{i, j, sign_normalize_first(dir)});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const Edge& x, const Edge& y) { return x.a != y.a ? x.a < y.a : x.b < y.b; });
  return out;
}

std::vector<LinRow> edge_cone_rows(const std::vector<IntVector>& pts, const Edge& e) {
  int n = (int)pts[0].size();
  std::vector<LinRow> rows;
  rows.push_back(make_row(e.dir, Rel::EQ, Rat(0)));
  for (int k = 0; k < (int)pts.size(); ++k) {
    if (k == e.a || k == e.b) continue;
    IntVector diff(n);
    for (int c = 0; c < n; ++c) diff[c] = pts[k][c] - pts[e.a][c];
    rows.push_back(make_row(diff, Rel::GE, Rat(0)));
  }
  return rows;
}

} // namespace tropcert
