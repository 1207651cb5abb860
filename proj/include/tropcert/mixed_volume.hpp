#pragma once
#include <cstdint>
#include <utility>
#include <vector>

#include "tropcert/lattice.hpp"

namespace tropcert {

enum class LiftKind { Random, Tau };

// A support with one integer height per point, in point order.
struct LiftedSupport {
  std::vector<IntVector> points;
  std::vector<Int> lifts;
  LiftKind kind = LiftKind::Random;
};

// A lower-hull cell spanned by one point pair per support.  The lifted inner
// normal is (normal, 1).  volume is the absolute determinant of the pair
// difference matrix; it is zero when the pairs are dependent, which happens
// only for tau cells wider than one edge per support.
struct MixedCell {
  std::vector<std::pair<int, int>> edges;
  std::vector<Rat> normal;
  Int volume = 0;
};

// Integer heights in [0, 2^16) from a seeded generator.
LiftedSupport lift_random(const std::vector<IntVector>& support, std::uint64_t seed);

// Exponent a = (a1,...,an) becomes base point (r_a, a2,...,an) with height a1,
// where r_a is a fresh random integer in [0, 2^16).  Zero-slack cell normals
// of such lifts carry the tropism directions.
LiftedSupport lift_tau(const std::vector<IntVector>& support, std::uint64_t seed);

// Lift a whole tuple from one generator, so the supports get distinct draws.
std::vector<LiftedSupport> lift_random_tuple(const std::vector<std::vector<IntVector>>& supports,
                                             std::uint64_t seed);
std::vector<LiftedSupport> lift_tau_tuple(const std::vector<std::vector<IntVector>>& supports,
                                          std::uint64_t seed);

// Lower-hull cells found by exact LP feasibility over pair combinations, one
// pair per support, canonically sorted by normal.
//
// Random heights must induce strict minima: any tie (or dependent pair tuple
// on the hull) raises "degenerate lifting: reseed", and the support count must
// equal the point dimension so cell volumes add up to the mixed volume.
//
// Tau heights tie by construction, so a tuple's normal is pinned instead by
// vertex enumeration of its feasible normal polyhedron and cells sharing a
// normal are merged.  With fewer supports than dimensions the normals are
// only determined inside the zero-slack slice, which is then imposed.
// only_zero_slack adds that restriction to every feasibility test up front
// instead of filtering afterwards; jobs splits the search over the first
// support's pairs.
std::vector<MixedCell> mixed_cells(const std::vector<LiftedSupport>& lifted,
                                   bool only_zero_slack = false, int jobs = 1);

// Directions carried by the zero-slack cells: normal (0, v2,...,vn) becomes
// the primitive integer vector of (1, v2,...,vn).  Deduplicated and sorted.
std::vector<IntVector> tropisms_from_cells(const std::vector<MixedCell>& cells);

// Mixed volume as the total cell volume of a random lifting, retrying with
// seed+1 while the draw is degenerate.
Int mixed_volume(const std::vector<std::vector<IntVector>>& supports,
                 std::uint64_t seed = 0xC0FFEE);

// Support-function recursion over primitive normals, exact; a cross-check for
// the cell method at small sizes.
Int mixed_volume_recursive(const std::vector<std::vector<IntVector>>& supports);

} // namespace tropcert
