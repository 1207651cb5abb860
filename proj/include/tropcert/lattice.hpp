#pragma once
#include <gmpxx.h>
#include <utility>
#include <vector>

#include "tropcert/error.hpp"

namespace tropcert {

using Int = mpz_class;
using Rat = mpq_class;
using IntVector = std::vector<Int>;

struct IntMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<Int> a; // row-major

  IntMatrix() = default;
  IntMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

  Int& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const Int& operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  bool operator==(const IntMatrix& o) const { return rows == o.rows && cols == o.cols && a == o.a; }

  static IntMatrix identity(int n);
  static IntMatrix from_rows(const std::vector<IntVector>& rs);
  IntVector row(int i) const;
  IntVector col(int j) const;
};

IntMatrix matmul(const IntMatrix& x, const IntMatrix& y);
IntMatrix transpose(const IntMatrix& x);
IntVector apply(const IntMatrix& m, const IntVector& v); // m * v

// Divides by the gcd of the entries.  Zero vector is an error.
IntVector gcd_normalize(const IntVector& v);

// Flips the sign so the first nonzero entry is positive.
IntVector sign_normalize_first(const IntVector& v);

bool is_zero(const IntVector& v);

// Row-style Hermite normal form: U*A = H with U unimodular, H in row
// echelon form with positive pivots and reduced entries above each pivot.
struct HnfResult {
  IntMatrix h;
  IntMatrix u;
  int rank = 0;
};
HnfResult hnf(const IntMatrix& a);

int rank(const IntMatrix& a);

// Exact determinant by fraction-free (Bareiss) elimination.
Int det(const IntMatrix& a);

// The primitive generator of the one-dimensional kernel of A (rank must be
// cols-1), sign-normalized.
IntVector kernel_primitive(const IntMatrix& a);

// Integer basis of the full kernel lattice of A (rows of the result).
std::vector<IntVector> kernel_basis(const IntMatrix& a);

// A unimodular matrix whose first column is the primitive vector v,
// built by a deterministic extended-gcd sweep.  det is exactly 1.
IntMatrix unimodular_with_first_column(const IntVector& v);

// Inverse of a unimodular matrix (error if |det| != 1).
IntMatrix inverse_unimodular(const IntMatrix& m);

Int dot(const IntVector& x, const IntVector& y);

} // namespace tropcert
