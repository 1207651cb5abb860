#include <doctest.h>

#include <random>
#include <set>
#include <utility>
#include <vector>

#include "tropcert/cyclic.hpp"
#include "tropcert/error.hpp"
#include "tropcert/mixed_volume.hpp"
#include "tropcert/polynomial.hpp"
#include "tropcert/tropism.hpp"

using namespace tropcert;

namespace {

IntVector vec(const std::vector<long>& v) {
  IntVector out;
  out.reserve(v.size());
  for (long x : v) out.emplace_back(x);
  return out;
}

std::vector<IntVector> pts(const std::vector<std::vector<long>>& ps) {
  std::vector<IntVector> out;
  out.reserve(ps.size());
  for (const auto& p : ps) out.push_back(vec(p));
  return out;
}

std::vector<std::vector<IntVector>> system_supports(const LaurentSystem& sys) {
  std::vector<std::vector<IntVector>> out;
  for (const auto& f : sys.polys) out.push_back(support(f));
  return out;
}

std::set<IntVector> pretropism_rays(const std::vector<std::vector<IntVector>>& sups, int n) {
  std::set<IntVector> out;
  for (const auto& t : enumerate_pretropisms(sups, n)) out.insert(t.v);
  return out;
}

std::set<IntVector> as_set(const std::vector<IntVector>& vs) {
  return std::set<IntVector>(vs.begin(), vs.end());
}

Int total_volume(const std::vector<MixedCell>& cells) {
  Int s = 0;
  for (const auto& c : cells) s += c.volume;
  return s;
}

std::vector<std::vector<IntVector>> random_tuple(std::mt19937_64& rng, int n, int max_pts) {
  std::uniform_int_distribution<int> npts(2, max_pts);
  std::uniform_int_distribution<long> coord(0, 3);
  std::vector<std::vector<IntVector>> sups(n);
  for (auto& s : sups) {
    std::set<std::vector<long>> seen;
    int want = npts(rng);
    while ((int)seen.size() < want) {
      std::vector<long> p(n);
      for (auto& x : p) x = coord(rng);
      seen.insert(p);
    }
    for (const auto& p : seen) s.push_back(vec(p));
  }
  return sups;
}

bool same_cells(const std::vector<MixedCell>& a, const std::vector<MixedCell>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].edges != b[i].edges) return false;
    if (a[i].normal != b[i].normal) return false;
    if (a[i].volume != b[i].volume) return false;
  }
  return true;
}

} // namespace

TEST_CASE("recursive volume on segments and squares") {
  auto seg_x = pts({{0, 0}, {1, 0}});
  auto seg_y = pts({{0, 0}, {0, 1}});
  CHECK(mixed_volume_recursive({seg_x, seg_y}) == 1);
  CHECK(mixed_volume_recursive({seg_y, seg_x}) == 1);

  auto square = pts({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  CHECK(mixed_volume_recursive({square, square}) == 2);

  auto triangle = pts({{0, 0}, {1, 0}, {0, 1}});
  CHECK(mixed_volume_recursive({seg_x, triangle}) == 1);
  CHECK(mixed_volume_recursive({triangle, triangle}) == 1);
}

TEST_CASE("recursive volume on simplices") {
  auto s2 = pts({{0, 0}, {1, 0}, {0, 1}});
  CHECK(mixed_volume_recursive({s2, s2}) == 1);
  auto s3 = pts({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  CHECK(mixed_volume_recursive({s3, s3, s3}) == 1);
  auto big = pts({{0, 0, 0}, {2, 0, 0}, {0, 2, 0}, {0, 0, 2}});
  CHECK(mixed_volume_recursive({big, big, big}) == 8);
  CHECK(mixed_volume_recursive({s3, s3, big}) == 2);
}

TEST_CASE("one-dimensional volume is the length") {
  CHECK(mixed_volume_recursive({pts({{0}, {3}})}) == 3);
  CHECK(mixed_volume_recursive({pts({{-2}, {1}, {5}})}) == 7);
  CHECK(mixed_volume({pts({{0}, {1}, {2}})}) == 2);
}

TEST_CASE("lifted cells on orthogonal segments") {
  auto lifted = lift_random_tuple({pts({{0, 0}, {1, 0}}), pts({{0, 0}, {0, 1}})}, 7);
  auto cells = mixed_cells(lifted);
  REQUIRE(cells.size() == 1);
  CHECK(cells[0].volume == 1);
  CHECK(cells[0].edges == std::vector<std::pair<int, int>>{{0, 1}, {0, 1}});
  CHECK(mixed_volume({pts({{0, 0}, {1, 0}}), pts({{0, 0}, {0, 1}})}) == 1);
}

TEST_CASE("cell volumes add up to the mixed volume") {
  auto square = pts({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  auto lifted = lift_random_tuple({square, square}, 11);
  CHECK(total_volume(mixed_cells(lifted)) == 2);
  CHECK(mixed_volume({square, square}) == 2);
}

TEST_CASE("random tuples: lifted cells match the recursion") {
  std::mt19937_64 rng(20260816);
  for (int iter = 0; iter < 30; ++iter) {
    int n = 2 + iter % 2;
    auto sups = random_tuple(rng, n, 5);
    CAPTURE(iter);
    CHECK(mixed_volume(sups, 1000 + iter) == mixed_volume_recursive(sups));
  }
}

TEST_CASE("random 4d tuples: lifted cells match the recursion") {
  std::mt19937_64 rng(4040);
  for (int iter = 0; iter < 6; ++iter) {
    auto sups = random_tuple(rng, 4, 4);
    CAPTURE(iter);
    CHECK(mixed_volume(sups, 77 + iter) == mixed_volume_recursive(sups));
  }
}

TEST_CASE("degenerate heights are reported, fresh ones recover") {
  LiftedSupport s;
  s.points = pts({{0}, {1}, {2}});
  s.lifts = {Int(0), Int(1), Int(2)};
  s.kind = LiftKind::Random;
  CHECK_THROWS_WITH(mixed_cells({s}), "degenerate lifting: reseed");
  CHECK(mixed_volume({s.points}) == 2);
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(mixed_volume({}), Error);
  CHECK_THROWS_AS(mixed_volume_recursive({}), Error);
  auto seg = pts({{0, 0}, {1, 0}});
  CHECK_THROWS_AS(mixed_volume({seg}), Error);
  CHECK_THROWS_AS(mixed_volume_recursive({seg}), Error);
  CHECK_THROWS_AS(mixed_volume({seg, pts({{0}, {1}})}), Error);
  LiftedSupport bad;
  bad.points = pts({{0, 0}, {1, 0}});
  bad.lifts = {Int(0)};
  CHECK_THROWS_AS(mixed_cells({bad}), Error);
}

TEST_CASE("tau cells of a binomial system expose its tropism") {
  auto sys = parse_system(
      "x1*x2^2*x3 - 2*x1^2*x2^3*x3;\n"
      "3*x1^2*x2^2*x3^5 + 9*x2*x3;");
  auto sups = system_supports(sys);
  auto cells = mixed_cells(lift_tau_tuple(sups, 5));
  auto trop = tropisms_from_cells(cells);
  REQUIRE(trop.size() == 1);
  CHECK(trop[0] == vec({4, -4, -1}));

  IntMatrix d = IntMatrix::from_rows({vec({1, 1, 0}), vec({2, 1, 4})});
  CHECK(trop[0] == sign_normalize_first(kernel_primitive(d)));
}

TEST_CASE("tau cells of cyclic-4 expose its tropism") {
  auto sups = system_supports(cyclic_system(4));
  auto trop = tropisms_from_cells(mixed_cells(lift_tau_tuple(sups, 9)));
  REQUIRE(trop.size() == 1);
  CHECK(trop[0] == vec({1, -1, 1, -1}));
}

TEST_CASE("dense quadric pair: the shared edge direction is the one candidate") {
  auto quad = pts({{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}});
  auto sups = std::vector<std::vector<IntVector>>{quad, quad};
  auto trop = tropisms_from_cells(mixed_cells(lift_tau_tuple(sups, 3)));
  REQUIRE(trop.size() == 1);
  CHECK(trop[0] == vec({1, 0}));
  CHECK(as_set(trop) == pretropism_rays(sups, 2));
}

TEST_CASE("tied faces do not hide directions from the tau lifting") {
  // The first support's minimal face for (1,0,0,0) is two-dimensional and the
  // other three faces are parallel segments, so no edge tuple pins the ray on
  // its own; it must fall out of the lifted cells regardless.
  auto sups = std::vector<std::vector<IntVector>>{
      pts({{0, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {1, 0, 0, 1}}),
      pts({{0, 0, 0, 0}, {0, 0, 0, 1}, {1, 1, 0, 0}}),
      pts({{0, 0, 0, 0}, {0, 0, 0, 2}, {1, 0, 1, 0}}),
      pts({{0, 1, 0, 0}, {0, 1, 0, 1}, {1, 0, 0, 0}}),
  };
  auto trop = tropisms_from_cells(mixed_cells(lift_tau_tuple(sups, 21)));
  auto rays = pretropism_rays(sups, 4);
  CHECK(rays.count(vec({1, 0, 0, 0})) == 1);
  CHECK(as_set(trop) == rays);
}

TEST_CASE("random tuples: tau cells agree with the ray enumeration") {
  std::mt19937_64 rng(616);
  for (int iter = 0; iter < 24; ++iter) {
    int n = 2 + iter % 2;
    auto sups = random_tuple(rng, n, 5);
    CAPTURE(iter);
    auto cells = mixed_cells(lift_tau_tuple(sups, 500 + iter));
    CHECK(as_set(tropisms_from_cells(cells)) == pretropism_rays(sups, n));
  }
}

TEST_CASE("constraining the slack up front selects the same cells") {
  std::mt19937_64 rng(909);
  for (int iter = 0; iter < 10; ++iter) {
    int n = 2 + iter % 3;
    auto sups = random_tuple(rng, n, 4);
    CAPTURE(iter);
    auto lifted = lift_tau_tuple(sups, 300 + iter);
    auto all = mixed_cells(lifted);
    auto constrained = mixed_cells(lifted, true);
    std::vector<MixedCell> zero_slack;
    for (const auto& c : all)
      if (c.normal[0] == 0) zero_slack.push_back(c);
    CHECK(same_cells(constrained, zero_slack));
    CHECK(tropisms_from_cells(constrained) == tropisms_from_cells(all));
  }
}

TEST_CASE("cell computation is deterministic and thread-count independent") {
  auto sups = std::vector<std::vector<IntVector>>{
      pts({{0, 0, 0}, {2, 0, 1}, {0, 1, 0}, {1, 1, 1}}),
      pts({{0, 0, 0}, {0, 2, 0}, {1, 0, 2}}),
      pts({{0, 0, 1}, {1, 0, 0}, {0, 3, 0}, {2, 2, 2}}),
  };
  auto lifted = lift_tau_tuple(sups, 42);
  auto a = mixed_cells(lifted);
  auto b = mixed_cells(lifted);
  CHECK(same_cells(a, b));
  auto c = mixed_cells(lifted, false, 2);
  CHECK(same_cells(a, c));

  auto r1 = mixed_cells(lift_random_tuple(sups, 42));
  auto r2 = mixed_cells(lift_random_tuple(sups, 42), false, 2);
  CHECK(same_cells(r1, r2));
}

TEST_CASE("tau lifting shape") {
  auto sup = pts({{1, 2, 1}, {2, 3, 1}});
  auto lifted = lift_tau(sup, 17);
  REQUIRE(lifted.points.size() == 2);
  CHECK(lifted.kind == LiftKind::Tau);
  CHECK(lifted.lifts == std::vector<Int>{1, 2});
  for (const auto& p : lifted.points) {
    REQUIRE(p.size() == 3);
    CHECK(p[0] >= 0);
    CHECK(p[0] < 65536);
  }
  CHECK(lifted.points[0][1] == 2);
  CHECK(lifted.points[0][2] == 1);
  CHECK(lifted.points[1][1] == 3);
  CHECK(lifted.points[1][2] == 1);
}
