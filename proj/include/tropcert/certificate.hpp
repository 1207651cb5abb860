#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "tropcert/lattice.hpp"
#include "tropcert/polynomial.hpp"
#include "tropcert/solver.hpp"

namespace tropcert {

// verify() returns this when the series satisfies the system identically.
inline constexpr int kExactZero = std::numeric_limits<int>::max();

// Two-term series data for one branch of a space curve,
//   x_j = c_j t^{nu_j} + d_j t^{mu_j} + ...,
// built from a tropism v, the unimodular coordinate change m whose first
// column is v, and one root of the transformed initial form system.  The
// second term is absent when every d_j vanishes.
struct Certificate {
  IntVector v;
  int nu1 = 1;
  IntVector nu;
  std::vector<Cplx> c;
  std::optional<IntVector> mu;
  std::optional<std::vector<Cplx>> d;
  IntMatrix m;
  NumericRoot initial_root;
  int verified_order = 0;
  long degree = 0;
};

enum class Outcome { NoTropism, NoRootAtInfinity, NoSeries, Certificate };
const char* outcome_label(Outcome o);

struct TropismReport {
  IntVector v;
  Outcome outcome = Outcome::NoRootAtInfinity;
  int initial_root_count = 0;
  std::vector<Certificate> certificates;
  std::string note;
};

struct PipelineReport {
  std::vector<TropismReport> tropisms;
  double seconds = 0.0;
  bool found_tropism() const { return !tropisms.empty(); }
};

// The full pipeline: enumerate tropisms, transform and solve each initial
// form system, compute second terms, assemble and check the certificates.
// Accepts square systems and (n-1) x n systems.  Stage failures for one
// tropism are recorded in its report entry, not thrown.
PipelineReport certify_curves(const LaurentSystem& s, std::uint64_t seed, int jobs = 1);

// Substitutes the certified series into s and measures how many orders of t
// vanish beyond the generic first residual order.  A gain of at least one
// confirms the branch; 0 is a failed check; kExactZero means the series
// solves the system exactly.
int verify(const LaurentSystem& s, const Certificate& cert);

// root_count x (max nu - min nu)
long degree(const Certificate& cert, long root_count);

// Substitutes the leading series terms into a random hyperplane, clears
// denominators and returns the exponent spread of the surviving terms.
// Reseeds once if random coefficients cancel.
long degree_by_hyperplane(const LaurentSystem& s, const Certificate& cert, std::uint64_t seed);

} // namespace tropcert
