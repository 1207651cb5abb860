#pragma once
#include <cstdint>
#include <vector>

#include "tropcert/lattice.hpp"

namespace tropcert {

struct DDRay {
  IntVector r;
  std::vector<std::uint64_t> tight; // bitset over the cone's inequality rows
};

// Double description state for {v : eq_rows v = 0, ineq_rows v >= 0},
// kept as lineality basis plus extreme rays modulo lineality.  Constraints
// are cut in one at a time, all arithmetic exact.
struct DDCone {
  int n = 0;
  std::vector<IntVector> lin;
  std::vector<DDRay> rays;
  std::vector<IntVector> eq_rows;
  std::vector<IntVector> ineq_rows;

  static DDCone full_space(int n);
  bool is_zero() const { return lin.empty() && rays.empty(); }
  void cut_halfspace(IntVector w);
  void cut_hyperplane(IntVector d);
  // generators of all one-dimensional faces: the extreme rays when pointed,
  // both directions of the lineality line when it is one-dimensional
  std::vector<IntVector> one_dim_faces() const;

private:
  IntVector split_lineality(const IntVector& w, size_t pivot);
};

// every generator of inner satisfies outer's constraint rows
bool cone_contains(const DDCone& outer, const DDCone& inner);

// Extreme rays of the pointed cone {y in R^q : rows * y >= 0}; the rows must
// have rank q.
std::vector<IntVector> extreme_rays_pointed(int q, const std::vector<IntVector>& rows);

// One-dimensional face analysis of {v : eqs v = 0, ineqs v >= 0}.
struct ConeOneDim {
  bool nonzero = false;          // the cone contains a nonzero vector
  int lineality_dim = 0;
  std::vector<IntVector> rays;   // generators of all one-dimensional faces
};
ConeOneDim cone_one_dim_faces(int n, const std::vector<IntVector>& eqs,
                              const std::vector<IntVector>& ineqs);

} // namespace tropcert
