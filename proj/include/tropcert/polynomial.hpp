#pragma once
#include <complex>
#include <map>
#include <string>
#include <vector>

#include "tropcert/lattice.hpp"

namespace tropcert {

using Cplx = std::complex<double>;

// Complex double with an exact rational shadow carried along as long as
// every operand is exact; the first irrational operation drops it.
struct Coeff {
  Cplx v{0.0, 0.0};
  bool exact = true;
  Rat re{0}, im{0};

  Coeff() = default;
  static Coeff rational(const Rat& re, const Rat& im = Rat(0));
  static Coeff approx(const Cplx& z);
  static Coeff integer(long k) { return rational(Rat(k)); }

  bool is_zero() const;
  bool is_real() const;

  Coeff operator-() const;
  Coeff operator+(const Coeff& o) const;
  Coeff operator-(const Coeff& o) const;
  Coeff operator*(const Coeff& o) const;
  Coeff operator/(const Coeff& o) const;
  bool operator==(const Coeff& o) const;
};

// Graded lexicographic, larger terms first, so map iteration order is the
// canonical print order.
struct GradedLexBefore {
  bool operator()(const IntVector& a, const IntVector& b) const;
};

struct LaurentPoly {
  int nvars = 0;
  std::map<IntVector, Coeff, GradedLexBefore> terms;

  explicit LaurentPoly(int n = 0) : nvars(n) {}
  void add_term(const IntVector& e, const Coeff& c); // accumulates, prunes zeros
  bool is_zero() const { return terms.empty(); }
  size_t nterms() const { return terms.size(); }
};

struct LaurentSystem {
  int nvars = 0;
  std::vector<std::string> names;
  std::vector<LaurentPoly> polys;
};

std::vector<IntVector> support(const LaurentPoly& f);

// x = y^M: exponents map a -> a^T M.  M must be unimodular.
LaurentPoly power_transform(const LaurentPoly& f, const IntMatrix& m);
LaurentSystem power_transform(const LaurentSystem& s, const IntMatrix& m);

// Divide out the componentwise-minimal exponent monomial; returns the
// quotient and the monomial's exponent.
std::pair<LaurentPoly, IntVector> divide_common_monomial(const LaurentPoly& f);

LaurentPoly add(const LaurentPoly& f, const LaurentPoly& g);
LaurentPoly mul(const LaurentPoly& f, const LaurentPoly& g);

// Value of x^k for complex x, integer k (x nonzero when k < 0).
Cplx ipow(const Cplx& x, const Int& k);

Cplx evaluate(const LaurentPoly& f, const std::vector<Cplx>& x);
std::vector<Cplx> evaluate(const LaurentSystem& s, const std::vector<Cplx>& x);

// Value and gradient in one pass, safe at zero coordinates for
// nonnegative exponents.
void eval_with_gradient(const LaurentPoly& f, const std::vector<Cplx>& x, Cplx& value,
                        std::vector<Cplx>& grad);

// Max total degree over terms (exponents must be nonnegative).
Int total_degree(const LaurentPoly& f);

std::string default_var_name(int i);
std::string to_string(const LaurentPoly& f, const std::vector<std::string>& names);
std::string to_string(const LaurentSystem& s);

// Parses the input grammar: statements end with ';', '#' starts a comment,
// an optional leading "vars: ..." line fixes variable order.
LaurentSystem parse_system(const std::string& text);

} // namespace tropcert
