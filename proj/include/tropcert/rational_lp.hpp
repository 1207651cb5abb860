#pragma once
#include <vector>

#include "tropcert/lattice.hpp"

namespace tropcert {

enum class Rel { EQ, GE };

struct LinRow {
  std::vector<Rat> a;
  Rel rel = Rel::GE;
  Rat b = 0;
};

// Decides whether {x in Q^dim : all rows hold} is nonempty.
// Phase-1 simplex over exact rationals with Bland's rule.
bool rational_feasible(int dim, const std::vector<LinRow>& rows);

LinRow make_row(const IntVector& coeffs, Rel rel, const Rat& rhs);

// Solves the square system a*x = b exactly.  Empty result when a is singular.
std::vector<Rat> solve_linear(const IntMatrix& a, const std::vector<Rat>& b);

} // namespace tropcert
