#pragma once
#include <cstdint>
#include <optional>
#include <vector>

#include "tropcert/lattice.hpp"
#include "tropcert/polynomial.hpp"

namespace tropcert {

// Exponent differences and right-hand sides of a system rewritten as
// x^(p-q) = -c_q/c_p, one row per equation.  The rewrite removes solutions
// with zero coordinates.
struct BinomialNormalForm {
  IntMatrix a;
  std::vector<Cplx> c;
};

// Every equation must have exactly two terms.  The monomial side is the
// first term in canonical order with a positive real coefficient (first
// term outright when neither qualifies).
BinomialNormalForm binomial_normal_form(const LaurentSystem& s);

struct NumericRoot {
  std::vector<Cplx> coords;
  double residual = 0.0;
  std::optional<Cplx> slack; // split off when the system was slack-embedded
  bool suspect = false;      // refinement missed the regular tolerance
};

// All |det(b)| solutions of x^b = c in (C*)^m: Hermite triangularization,
// then back-substitution over every branch of the k-th roots.
std::vector<NumericRoot> solve_binomial_square(const IntMatrix& b, const std::vector<Cplx>& c);

struct SolveReport {
  std::vector<NumericRoot> roots; // finite endpoints in path order
  int at_infinity = 0;            // paths diverging past the magnitude cap
  int failures = 0;               // paths abandoned by the tracker
};

// Total-degree homotopy with a random unit-modulus scaling of the start
// system x_i^{d_i} = gamma_i.  Equations are divided by their common
// monomials first; at most 8 variables and a degree product of 10^4.
// A run with lost paths is retried once on a reseeded start system.
SolveReport solve_square_numeric(const LaurentSystem& s, std::uint64_t seed, int jobs = 1);

// Appends gamma_k * s with fresh random |gamma_k| = 1 to every equation,
// squaring up n+1 equations in n unknowns; the slack variable comes last.
LaurentSystem embed_slack(const LaurentSystem& s, std::uint64_t seed);

struct SecondTerm {
  enum class Status { Found, None, Underdetermined };
  Status status = Status::None;
  std::vector<Cplx> z;    // one entry per variable after the first
  double residual = 0.0;  // least-squares defect of the t^1 equations
};

// Substitutes y_1 = t, y_k = root_k + z_k*t into a system with nonnegative
// y_1 exponents and solves the lowest-order t coefficients for z by least
// squares.  None marks an inconsistent system (isolated point, no series);
// Underdetermined marks a rank-deficient one.
SecondTerm second_term_linear(const LaurentSystem& s, const NumericRoot& root);

} // namespace tropcert
