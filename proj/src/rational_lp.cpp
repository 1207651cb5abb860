#include "tropcert/rational_lp.hpp"

namespace tropcert {

LinRow make_row(const IntVector& coeffs, Rel rel, const Rat& rhs) {
  LinRow r;
  r.a.reserve(coeffs.size());
  for (const auto& c : coeffs) r.a.emplace_back(c);
  r.rel = rel;
  r.b = rhs;
  return r;
}

// Standard form: free x split as u - w, surplus on >= rows, one artificial
// per row, minimize the artificial sum.  Feasible iff the optimum is zero.
bool rational_feasible(int dim, const std::vector<LinRow>& rows) {
  const int m = static_cast<int>(rows.size());
  if (m == 0) return true;

  int nge = 0;
  for (const auto& r : rows)
    if (r.rel == Rel::GE) ++nge;

  const int ncols = 2 * dim + nge + m; // u, w, surplus, artificial
  std::vector<std::vector<Rat>> t(m, std::vector<Rat>(ncols + 1));

  int si = 0;
  for (int i = 0; i < m; ++i) {
    const LinRow& r = rows[i];
    if (static_cast<int>(r.a.size()) != dim) throw Error("rational_feasible: row length mismatch");
    for (int j = 0; j < dim; ++j) {
      t[i][j] = r.a[j];
      t[i][dim + j] = -r.a[j];
    }
    if (r.rel == Rel::GE) t[i][2 * dim + si++] = -1;
    t[i][ncols] = r.b;
    if (t[i][ncols] < 0)
      for (auto& x : t[i]) x = -x;
    t[i][2 * dim + nge + i] = 1;
  }

  // objective row for min(sum of artificials), basis columns zeroed out
  std::vector<Rat> obj(ncols + 1);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= ncols; ++j)
      if (j < 2 * dim + nge || j == ncols) obj[j] -= t[i][j];

  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = 2 * dim + nge + i;

  for (;;) {
    int enter = -1;
    for (int j = 0; j < ncols; ++j)
      if (obj[j] < 0) { enter = j; break; }
    if (enter < 0) break;

    int leave = -1;
    Rat best;
    for (int i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      Rat ratio = t[i][ncols] / t[i][enter];
      if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave < 0) throw Error("rational_feasible: phase-1 unbounded");

    Rat piv = t[leave][enter];
    for (auto& x : t[leave]) x /= piv;
    for (int i = 0; i < m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      Rat f = t[i][enter];
      for (int j = 0; j <= ncols; ++j) t[i][j] -= f * t[leave][j];
    }
    if (obj[enter] != 0) {
      Rat f = obj[enter];
      for (int j = 0; j <= ncols; ++j) obj[j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }

  return obj[ncols] == 0;
}

std::vector<Rat> solve_linear(const IntMatrix& a, const std::vector<Rat>& b) {
  if (a.rows != a.cols || static_cast<int>(b.size()) != a.rows)
    throw Error("solve_linear: shape mismatch");
  const int n = a.rows;
  std::vector<std::vector<Rat>> t(n, std::vector<Rat>(n + 1));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) t[i][j] = a(i, j);
    t[i][n] = b[i];
  }
  for (int c = 0; c < n; ++c) {
    int p = -1;
    for (int i = c; i < n; ++i)
      if (t[i][c] != 0) { p = i; break; }
    if (p < 0) return {};
    std::swap(t[c], t[p]);
    Rat piv = t[c][c];
    for (auto& x : t[c]) x /= piv;
    for (int i = 0; i < n; ++i) {
      if (i == c || t[i][c] == 0) continue;
      Rat f = t[i][c];
      for (int j = c; j <= n; ++j) t[i][j] -= f * t[c][j];
    }
  }
  std::vector<Rat> x(n);
  for (int i = 0; i < n; ++i) x[i] = t[i][n];
  return x;
}

} // namespace tropcert
