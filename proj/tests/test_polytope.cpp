#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "tropcert/polytope.hpp"

using namespace tropcert;

namespace {

IntVector vec(const std::vector<long>& v) {
  IntVector r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = v[i];
  return r;
}

std::vector<IntVector> pts(const std::vector<std::vector<long>>& ps) {
  std::vector<IntVector> r;
  for (const auto& p : ps) r.push_back(vec(p));
  return r;
}

std::set<std::pair<int, int>> edge_pairs(const std::vector<Edge>& es) {
  std::set<std::pair<int, int>> s;
  for (const auto& e : es) s.insert({e.a, e.b});
  return s;
}

// --- independent oracle: brute-force facet enumeration -------------------

struct BruteFacet {
  IntVector g;
  Int val;
  std::vector<bool> tight;
};

int diff_rank(const std::vector<IntVector>& ps) {
  if (ps.size() < 2) return 0;
  int n = (int)ps[0].size();
  IntMatrix d((int)ps.size() - 1, n);
  for (size_t i = 1; i < ps.size(); ++i)
    for (int j = 0; j < n; ++j) d((int)i - 1, j) = ps[i][j] - ps[0][j];
  return rank(d);
}

// all inner-normal facets of a full-dimensional hull
std::vector<BruteFacet> brute_facets(const std::vector<IntVector>& ps) {
  int m = (int)ps.size(), n = (int)ps[0].size();
  std::vector<BruteFacet> out;
  std::vector<int> idx(n);
  std::vector<int> sel;
  // iterate over all n-subsets
  std::vector<int> comb(n);
  for (int i = 0; i < n; ++i) comb[i] = i;
  auto next_comb = [&]() {
    int i = n - 1;
    while (i >= 0 && comb[i] == m - n + i) --i;
    if (i < 0) return false;
    ++comb[i];
    for (int j = i + 1; j < n; ++j) comb[j] = comb[j - 1] + 1;
    return true;
  };
  if (m < n) return out;
  do {
    IntMatrix d(n - 1, n);
    for (int k = 1; k < n; ++k)
      for (int j = 0; j < n; ++j) d(k - 1, j) = ps[comb[k]][j] - ps[comb[0]][j];
    if (rank(d) != n - 1) continue;
    IntVector g = kernel_primitive(d);
    Int v0 = dot(ps[comb[0]], g);
    bool above = false, below = false;
    for (int k = 0; k < m; ++k) {
      Int dv = dot(ps[k], g);
      if (dv > v0) above = true;
      if (dv < v0) below = true;
    }
    if (above && below) continue;
    if (above) {
      // g already inner
    } else if (below) {
      for (auto& x : g) x = -x;
      v0 = -v0;
    }
    BruteFacet f;
    f.g = g;
    f.val = v0;
    f.tight.assign(m, false);
    for (int k = 0; k < m; ++k) f.tight[k] = (dot(ps[k], g) == v0);
    bool dup = false;
    for (const auto& o : out)
      if (o.g == f.g && o.val == f.val) dup = true;
    if (!dup) out.push_back(std::move(f));
  } while (next_comb());
  return out;
}

bool brute_is_edge(const std::vector<IntVector>& ps, int i, int j,
                   const std::vector<BruteFacet>& facets) {
  int m = (int)ps.size(), n = (int)ps[0].size();
  std::vector<IntVector> normals;
  for (const auto& f : facets)
    if (f.tight[i] && f.tight[j]) normals.push_back(f.g);
  if (normals.empty()) return false;
  IntMatrix nm = IntMatrix::from_rows(normals);
  if (rank(nm) != n - 1) return false;
  // points lying on every facet through i and j form the minimal face
  std::vector<int> face;
  for (int k = 0; k < m; ++k) {
    bool all = true;
    for (const auto& f : facets)
      if (f.tight[i] && f.tight[j] && !f.tight[k]) all = false;
    if (all) face.push_back(k);
  }
  // (i, j) must be the extreme pair of that one-dimensional face
  for (int k : face) {
    if (k == i || k == j) continue;
    // k must lie strictly between: check via dot with the edge direction
    IntVector d(n);
    for (int c = 0; c < n; ++c) d[c] = ps[j][c] - ps[i][c];
    Int t_num = dot(ps[k], d) - dot(ps[i], d);
    Int t_den = dot(d, d);
    if (t_num < 0 || t_num > t_den) return false;
  }
  return true;
}

// exact 2d convex hull, monotone chain, strict turns
std::vector<int> hull2d(const std::vector<IntVector>& ps) {
  int m = (int)ps.size();
  std::vector<int> order(m);
  for (int i = 0; i < m; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (ps[a][0] != ps[b][0]) return ps[a][0] < ps[b][0];
    return ps[a][1] < ps[b][1];
  });
  auto cross = [&](int o, int a, int b) -> Int {
    return (ps[a][0] - ps[o][0]) * (ps[b][1] - ps[o][1]) -
           (ps[a][1] - ps[o][1]) * (ps[b][0] - ps[o][0]);
  };
  std::vector<int> h;
  for (int pass = 0; pass < 2; ++pass) {
    size_t base = h.size();
    for (int ii = 0; ii < m; ++ii) {
      int k = order[pass == 0 ? ii : m - 1 - ii];
      while (h.size() >= base + 2 && cross(h[h.size() - 2], h[h.size() - 1], k) <= 0)
        h.pop_back();
      h.push_back(k);
    }
    h.pop_back();
  }
  return h; // counterclockwise vertex indices
}

} // namespace

TEST_CASE("support_value and face_indices on the unit square") {
  auto sq = pts({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  CHECK(support_value(sq, vec({1, 0})) == 0);
  CHECK(support_value(sq, vec({-1, -1})) == -2);
  CHECK(face_indices(sq, vec({1, 1})) == std::vector<int>{0});
  CHECK(face_indices(sq, vec({0, -1})) == std::vector<int>{2, 3});
}

TEST_CASE("support_value is positively homogeneous") {
  std::mt19937_64 rng(808);
  std::uniform_int_distribution<long> d(-5, 5);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 2 + (int)(rng() % 3);
    std::vector<IntVector> ps;
    for (int i = 0; i < 5; ++i) {
      IntVector p(n);
      for (int j = 0; j < n; ++j) p[j] = d(rng);
      ps.push_back(p);
    }
    IntVector v(n);
    for (int j = 0; j < n; ++j) v[j] = d(rng);
    IntVector v3(n);
    for (int j = 0; j < n; ++j) v3[j] = 3 * v[j];
    CHECK(support_value(ps, v3) == 3 * support_value(ps, v));
  }
}

TEST_CASE("edges of the unit square") {
  auto sq = pts({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  auto es = edges(sq);
  CHECK(edge_pairs(es) ==
        std::set<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 3}, {2, 3}});
}

TEST_CASE("collinear points collapse to one edge") {
  auto es = edges(pts({{0, 0}, {1, 1}, {2, 2}}));
  REQUIRE(es.size() == 1);
  CHECK(es[0].a == 0);
  CHECK(es[0].b == 2);
  CHECK(es[0].dir == vec({1, 1}));
}

TEST_CASE("midpoints on an edge do not become endpoints") {
  auto tri = pts({{0, 0}, {2, 0}, {0, 2}, {1, 1}});
  auto es = edges(tri);
  CHECK(edge_pairs(es) == std::set<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 2}});
}

TEST_CASE("interior diagonal of a square is rejected") {
  auto sq = pts({{0, 0}, {2, 0}, {0, 2}, {2, 2}, {1, 1}});
  auto es = edges(sq);
  CHECK(edge_pairs(es) == std::set<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 3}, {2, 3}});
}

TEST_CASE("planar polytopes embedded in 3d keep their boundary edges") {
  auto tri = pts({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}});
  CHECK(edge_pairs(edges(tri)) ==
        std::set<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 2}});
  auto sq = pts({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}});
  CHECK(edge_pairs(edges(sq)) ==
        std::set<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 3}, {2, 3}});
}

TEST_CASE("duplicate points are an error") {
  CHECK_THROWS_AS(edges(pts({{0, 0}, {0, 0}})), Error);
}

TEST_CASE("edge_cone_rows hold at a supporting direction") {
  auto sq = pts({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  auto es = edges(sq);
  // edge {0,1} has inner normal (0,1)
  for (const auto& e : es) {
    if (e.a != 0 || e.b != 1) continue;
    auto rows = edge_cone_rows(sq, e);
    IntVector v = vec({0, 1});
    for (const auto& r : rows) {
      Rat lhs = 0;
      for (size_t c = 0; c < r.a.size(); ++c) lhs += r.a[c] * Rat(v[c]);
      if (r.rel == Rel::EQ)
        CHECK(lhs == r.b);
      else
        CHECK(lhs >= r.b);
    }
  }
}

TEST_CASE("edges agree with an exact 2d convex hull") {
  std::mt19937_64 rng(1618);
  std::uniform_int_distribution<long> d(0, 6);
  for (int trial = 0; trial < 60; ++trial) {
    std::set<std::pair<long, long>> seen;
    std::vector<IntVector> ps;
    int m = 3 + (int)(rng() % 6);
    while ((int)ps.size() < m) {
      long x = d(rng), y = d(rng);
      if (seen.insert({x, y}).second) ps.push_back(vec({x, y}));
    }
    if (diff_rank(ps) < 2) continue;
    auto hull = hull2d(ps);
    std::set<std::pair<int, int>> expect;
    for (size_t k = 0; k < hull.size(); ++k) {
      int a = hull[k], b = hull[(k + 1) % hull.size()];
      expect.insert({std::min(a, b), std::max(a, b)});
    }
    CHECK(edge_pairs(edges(ps)) == expect);
  }
}

TEST_CASE("edges agree with brute-force facet enumeration in 3d") {
  std::mt19937_64 rng(27182);
  std::uniform_int_distribution<long> d(0, 3);
  int tested = 0;
  for (int trial = 0; trial < 200 && tested < 40; ++trial) {
    std::set<std::vector<long>> seen;
    std::vector<IntVector> ps;
    int m = 4 + (int)(rng() % 4);
    int guard = 0;
    while ((int)ps.size() < m && guard++ < 100) {
      std::vector<long> p = {d(rng), d(rng), d(rng)};
      if (seen.insert(p).second) ps.push_back(vec(p));
    }
    if ((int)ps.size() < m || diff_rank(ps) != 3) continue;
    ++tested;
    auto facets = brute_facets(ps);
    std::set<std::pair<int, int>> expect;
    for (int i = 0; i < (int)ps.size(); ++i)
      for (int j = i + 1; j < (int)ps.size(); ++j)
        if (brute_is_edge(ps, i, j, facets)) expect.insert({i, j});
    CHECK(edge_pairs(edges(ps)) == expect);
  }
  CHECK(tested == 40);
}
