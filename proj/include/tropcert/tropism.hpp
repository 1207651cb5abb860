#pragma once
#include <vector>

#include "tropcert/lattice.hpp"
#include "tropcert/polynomial.hpp"

namespace tropcert {

// A certified direction: v is primitive with v[0] > 0, and faces[i] lists the
// support indices of polynomial i lying on the minimal face exposed by v.
struct Tropism {
  IntVector v;
  std::vector<std::vector<int>> faces;
};

// All isolated rays (one-dimensional intersections of edge normal cones,
// at least one edge of every polytope tight) with positive first coordinate,
// sorted lexicographically.
std::vector<Tropism> enumerate_pretropisms(const std::vector<std::vector<IntVector>>& supports,
                                           int nvars);
std::vector<Tropism> enumerate_pretropisms(const LaurentSystem& sys);

// Terms of f whose exponents minimize <a, v>.
LaurentPoly initial_form(const LaurentPoly& f, const IntVector& v);
LaurentSystem initial_form_system(const LaurentSystem& sys, const IntVector& v);

// Partition of the vectors into orbits under the group generated by the
// given variable permutations (g maps position i to g[i]).  Vectors are
// compared exactly up to positive scaling; antipodal rays stay distinct.
// Each orbit lists member indices in increasing order; orbits are sorted
// by smallest member.
std::vector<std::vector<int>> group_orbits(const std::vector<IntVector>& vs,
                                           const std::vector<std::vector<int>>& generators);

} // namespace tropcert
