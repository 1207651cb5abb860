#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "doctest.h"
#include "tropcert/cone.hpp"
#include "tropcert/error.hpp"
#include "tropcert/lattice.hpp"
#include "tropcert/rational_lp.hpp"

using namespace tropcert;

namespace {

IntVector vec(std::initializer_list<long> xs) {
  IntVector v;
  for (long x : xs) v.push_back(Int(x));
  return v;
}

int rank_of(const std::vector<IntVector>& rows) {
  if (rows.empty()) return 0;
  return rank(IntMatrix::from_rows(rows));
}

// extreme rays of a pointed cone {Ay >= 0}, by brute force: a nonzero y lies
// on a one-dimensional face exactly when its tight rows have rank q-1, and
// every such y is the kernel of some (q-1)-subset of rows
std::set<IntVector> brute_extreme_rays(int q, const std::vector<IntVector>& rows) {
  std::set<IntVector> out;
  auto consider = [&](const IntVector& y) {
    std::vector<IntVector> tight;
    for (const auto& w : rows) {
      Int d = dot(w, y);
      if (d < 0) return;
      if (d == 0) tight.push_back(w);
    }
    if (rank_of(tight) == q - 1) out.insert(y);
  };
  if (q == 1) {
    consider(vec({1}));
    consider(vec({-1}));
    return out;
  }
  int m = (int)rows.size();
  std::vector<int> pick(q - 1);
  auto rec = [&](auto&& self, int start, int k) -> void {
    if (k == q - 1) {
      std::vector<IntVector> sel;
      for (int i : pick) sel.push_back(rows[i]);
      if (rank_of(sel) != q - 1) return;
      IntVector y = kernel_primitive(IntMatrix::from_rows(sel));
      consider(y);
      IntVector ny(q);
      for (int j = 0; j < q; ++j) ny[j] = -y[j];
      consider(ny);
      return;
    }
    for (int i = start; i < m; ++i) {
      pick[k] = i;
      self(self, i + 1, k + 1);
    }
  };
  rec(rec, 0, 0);
  return out;
}

// generators of the one-dimensional faces of {eqs v = 0, ineqs v >= 0}
std::set<IntVector> brute_one_dim(int n, const std::vector<IntVector>& eqs,
                                  const std::vector<IntVector>& ineqs) {
  std::set<IntVector> out;
  auto consider = [&](const IntVector& v) {
    for (const auto& e : eqs)
      if (dot(e, v) != 0) return;
    std::vector<IntVector> tight = eqs;
    for (const auto& w : ineqs) {
      Int d = dot(w, v);
      if (d < 0) return;
      if (d == 0) tight.push_back(w);
    }
    if (rank_of(tight) == n - 1) out.insert(v);
  };
  int m = (int)ineqs.size();
  for (unsigned long mask = 0; mask < (1ul << m); ++mask) {
    std::vector<IntVector> sel = eqs;
    for (int i = 0; i < m; ++i)
      if (mask & (1ul << i)) sel.push_back(ineqs[i]);
    if (rank_of(sel) != n - 1) continue;
    IntVector y = kernel_primitive(IntMatrix::from_rows(sel));
    consider(y);
    IntVector ny(n);
    for (int j = 0; j < n; ++j) ny[j] = -y[j];
    consider(ny);
  }
  return out;
}

bool lp_nonzero(int n, const std::vector<IntVector>& eqs, const std::vector<IntVector>& ineqs) {
  std::vector<IntVector> all = eqs;
  for (const auto& w : ineqs) all.push_back(w);
  if (rank_of(all) < n) return true;
  std::vector<LinRow> rows;
  for (const auto& e : eqs) rows.push_back(make_row(e, Rel::EQ, Rat(0)));
  for (const auto& w : ineqs) rows.push_back(make_row(w, Rel::GE, Rat(0)));
  IntVector sum(n, Int(0));
  for (const auto& w : ineqs)
    for (int j = 0; j < n; ++j) sum[j] += w[j];
  rows.push_back(make_row(sum, Rel::EQ, Rat(1)));
  return rational_feasible(n, rows);
}

std::set<IntVector> as_set(const std::vector<IntVector>& vs) {
  return std::set<IntVector>(vs.begin(), vs.end());
}

} // namespace

TEST_CASE("extreme rays of the positive orthant") {
  std::vector<IntVector> rows = {vec({1, 0, 0}), vec({0, 1, 0}), vec({0, 0, 1})};
  auto rays = extreme_rays_pointed(3, rows);
  CHECK(as_set(rays) == as_set({vec({1, 0, 0}), vec({0, 1, 0}), vec({0, 0, 1})}));
}

TEST_CASE("extreme rays of a four-ray cone") {
  std::vector<IntVector> rows = {vec({1, 0, 1}), vec({-1, 0, 1}), vec({0, 1, 1}),
                                 vec({0, -1, 1})};
  auto rays = extreme_rays_pointed(3, rows);
  CHECK(as_set(rays) == as_set({vec({1, 1, 1}), vec({1, -1, 1}), vec({-1, 1, 1}),
                                vec({-1, -1, 1})}));
}

TEST_CASE("extreme rays of the origin cone") {
  std::vector<IntVector> rows = {vec({1, 0}), vec({0, 1}), vec({-1, -1})};
  CHECK(extreme_rays_pointed(2, rows).empty());
}

TEST_CASE("extreme rays in one dimension") {
  CHECK(extreme_rays_pointed(1, {vec({2})}) == std::vector<IntVector>{vec({1})});
  CHECK(extreme_rays_pointed(1, {vec({2}), vec({-3})}).empty());
}

TEST_CASE("extreme rays reject rank-deficient rows") {
  CHECK_THROWS_AS(extreme_rays_pointed(3, {vec({1, 0, 0}), vec({0, 1, 0})}), Error);
}

TEST_CASE("extreme rays agree with the brute-force oracle") {
  std::mt19937_64 rng(60601);
  std::uniform_int_distribution<int> entry(-3, 3);
  int tested = 0;
  while (tested < 120) {
    std::uniform_int_distribution<int> qd(2, 4);
    int q = qd(rng);
    std::uniform_int_distribution<int> md(q, q + 4);
    int m = md(rng);
    std::vector<IntVector> rows;
    for (int i = 0; i < m; ++i) {
      IntVector r(q);
      bool zero = true;
      for (int j = 0; j < q; ++j) {
        r[j] = entry(rng);
        if (r[j] != 0) zero = false;
      }
      if (zero) r[0] = 1;
      rows.push_back(r);
    }
    if (rank_of(rows) < q) continue;
    ++tested;
    auto got = as_set(extreme_rays_pointed(q, rows));
    auto want = brute_extreme_rays(q, rows);
    REQUIRE(got == want);
  }
  CHECK(tested == 120);
}

TEST_CASE("one-dimensional faces of a pointed slice") {
  // v1 + v2 + v3 = 0, v1 >= 0, v2 >= 0
  auto res = cone_one_dim_faces(3, {vec({1, 1, 1})}, {vec({1, 0, 0}), vec({0, 1, 0})});
  CHECK(res.nonzero);
  CHECK(res.lineality_dim == 0);
  CHECK(as_set(res.rays) == as_set({vec({1, 0, -1}), vec({0, 1, -1})}));
}

TEST_CASE("lineality line is the only one-dimensional face") {
  auto res = cone_one_dim_faces(3, {}, {vec({1, 0, 0}), vec({0, 1, 0})});
  CHECK(res.nonzero);
  CHECK(res.lineality_dim == 1);
  CHECK(as_set(res.rays) == as_set({vec({0, 0, 1}), vec({0, 0, -1})}));
}

TEST_CASE("wide lineality has no one-dimensional face") {
  auto res = cone_one_dim_faces(3, {}, {vec({1, 0, 0})});
  CHECK(res.nonzero);
  CHECK(res.lineality_dim == 2);
  CHECK(res.rays.empty());
}

TEST_CASE("equalities can pin the cone to the origin") {
  auto res = cone_one_dim_faces(2, {vec({1, 0}), vec({0, 1})}, {});
  CHECK_FALSE(res.nonzero);
  CHECK(res.rays.empty());
}

TEST_CASE("origin cone cut out by inequalities") {
  auto res = cone_one_dim_faces(2, {}, {vec({1, 0}), vec({0, 1}), vec({-1, -1})});
  CHECK_FALSE(res.nonzero);
  CHECK(res.rays.empty());
}

TEST_CASE("one-dimensional faces agree with oracles on random cones") {
  std::mt19937_64 rng(31415);
  std::uniform_int_distribution<int> entry(-2, 2);
  std::uniform_int_distribution<int> ne(0, 2);
  std::uniform_int_distribution<int> nw(0, 6);
  int n = 4;
  for (int trial = 0; trial < 150; ++trial) {
    auto draw = [&](int count) {
      std::vector<IntVector> rows;
      for (int i = 0; i < count; ++i) {
        IntVector r(n);
        bool zero = true;
        for (int j = 0; j < n; ++j) {
          r[j] = entry(rng);
          if (r[j] != 0) zero = false;
        }
        if (!zero) rows.push_back(r);
      }
      return rows;
    };
    auto eqs = draw(ne(rng));
    auto ineqs = draw(nw(rng));
    auto res = cone_one_dim_faces(n, eqs, ineqs);
    CHECK(res.nonzero == lp_nonzero(n, eqs, ineqs));
    std::vector<IntVector> all = eqs;
    for (const auto& w : ineqs) all.push_back(w);
    CHECK(res.lineality_dim == n - rank_of(all));
    CHECK(as_set(res.rays) == brute_one_dim(n, eqs, ineqs));
  }
}
