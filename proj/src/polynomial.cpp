#include "tropcert/polynomial.hpp"

#include <cstdio>
#include <sstream>

#include "tropcert/error.hpp"

namespace tropcert {

static double rat_to_double(const Rat& r) { return mpq_get_d(r.get_mpq_t()); }

Coeff Coeff::rational(const Rat& re, const Rat& im) {
  Coeff c;
  c.exact = true;
  c.re = re;
  c.im = im;
  c.re.canonicalize();
  c.im.canonicalize();
  c.v = Cplx(rat_to_double(c.re), rat_to_double(c.im));
  return c;
}

Coeff Coeff::approx(const Cplx& z) {
  Coeff c;
  c.exact = false;
  c.v = z;
  return c;
}

bool Coeff::is_zero() const {
  if (exact) return re == 0 && im == 0;
  return v.real() == 0.0 && v.imag() == 0.0;
}

bool Coeff::is_real() const {
  if (exact) return im == 0;
  return v.imag() == 0.0;
}

Coeff Coeff::operator-() const {
  if (exact) return rational(-re, -im);
  return approx(-v);
}

Coeff Coeff::operator+(const Coeff& o) const {
  if (exact && o.exact) return rational(re + o.re, im + o.im);
  return approx(v + o.v);
}

Coeff Coeff::operator-(const Coeff& o) const {
  if (exact && o.exact) return rational(re - o.re, im - o.im);
  return approx(v - o.v);
}

Coeff Coeff::operator*(const Coeff& o) const {
  if (exact && o.exact)
    return rational(re * o.re - im * o.im, re * o.im + im * o.re);
  return approx(v * o.v);
}

Coeff Coeff::operator/(const Coeff& o) const {
  if (exact && o.exact) {
    Rat n2 = o.re * o.re + o.im * o.im;
    if (n2 == 0) throw Error("division by zero coefficient");
    return rational((re * o.re + im * o.im) / n2, (im * o.re - re * o.im) / n2);
  }
  return approx(v / o.v);
}

bool Coeff::operator==(const Coeff& o) const {
  if (exact && o.exact) return re == o.re && im == o.im;
  return v == o.v;
}

bool GradedLexBefore::operator()(const IntVector& a, const IntVector& b) const {
  if (a.size() != b.size()) return a.size() > b.size();
  Int sa = 0, sb = 0;
  for (const auto& x : a) sa += x;
  for (const auto& x : b) sb += x;
  if (sa != sb) return sa > sb;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] > b[i];
  return false;
}

void LaurentPoly::add_term(const IntVector& e, const Coeff& c) {
  if ((int)e.size() != nvars) throw Error("exponent arity mismatch");
  if (c.is_zero()) return;
  auto it = terms.find(e);
  if (it == terms.end()) {
    terms.emplace(e, c);
    return;
  }
  it->second = it->second + c;
  if (it->second.is_zero()) terms.erase(it);
}

std::vector<IntVector> support(const LaurentPoly& f) {
  std::vector<IntVector> pts;
  pts.reserve(f.terms.size());
  for (const auto& [e, c] : f.terms) pts.push_back(e);
  return pts;
}

LaurentPoly power_transform(const LaurentPoly& f, const IntMatrix& m) {
  if (m.rows != f.nvars || m.cols != f.nvars)
    throw Error("transform shape mismatch");
  Int d = det(m);
  if (d != 1 && d != -1) throw Error("transform not unimodular");
  LaurentPoly g(f.nvars);
  for (const auto& [a, c] : f.terms) {
    IntVector e(f.nvars, Int(0));
    for (int k = 0; k < f.nvars; ++k)
      for (int j = 0; j < f.nvars; ++j) e[k] += a[j] * m(j, k);
    g.add_term(e, c);
  }
  return g;
}

LaurentSystem power_transform(const LaurentSystem& s, const IntMatrix& m) {
  LaurentSystem r;
  r.nvars = s.nvars;
  r.names = s.names;
  r.polys.reserve(s.polys.size());
  for (const auto& f : s.polys) r.polys.push_back(power_transform(f, m));
  return r;
}

std::pair<LaurentPoly, IntVector> divide_common_monomial(const LaurentPoly& f) {
  if (f.terms.empty()) return {f, IntVector(f.nvars, Int(0))};
  IntVector shift = f.terms.begin()->first;
  for (const auto& [e, c] : f.terms)
    for (int i = 0; i < f.nvars; ++i)
      if (e[i] < shift[i]) shift[i] = e[i];
  LaurentPoly g(f.nvars);
  for (const auto& [e, c] : f.terms) {
    IntVector q(f.nvars);
    for (int i = 0; i < f.nvars; ++i) q[i] = e[i] - shift[i];
    g.add_term(q, c);
  }
  return {g, shift};
}

LaurentPoly add(const LaurentPoly& f, const LaurentPoly& g) {
  LaurentPoly r = f;
  for (const auto& [e, c] : g.terms) r.add_term(e, c);
  return r;
}

LaurentPoly mul(const LaurentPoly& f, const LaurentPoly& g) {
  LaurentPoly r(f.nvars);
  for (const auto& [ea, ca] : f.terms)
    for (const auto& [eb, cb] : g.terms) {
      IntVector e(f.nvars);
      for (int i = 0; i < f.nvars; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

Cplx ipow(const Cplx& x, const Int& k) {
  long e = mpz_get_si(k.get_mpz_t());
  if (e == 0) return Cplx(1.0, 0.0);
  bool neg = e < 0;
  unsigned long u = neg ? (unsigned long)(-(e + 1)) + 1ul : (unsigned long)e;
  Cplx base = x, acc(1.0, 0.0);
  while (u > 0) {
    if (u & 1ul) acc *= base;
    base *= base;
    u >>= 1;
  }
  return neg ? Cplx(1.0, 0.0) / acc : acc;
}

Cplx evaluate(const LaurentPoly& f, const std::vector<Cplx>& x) {
  Cplx s(0.0, 0.0);
  for (const auto& [e, c] : f.terms) {
    Cplx m = c.v;
    for (int i = 0; i < f.nvars; ++i)
      if (e[i] != 0) m *= ipow(x[i], e[i]);
    s += m;
  }
  return s;
}

std::vector<Cplx> evaluate(const LaurentSystem& s, const std::vector<Cplx>& x) {
  std::vector<Cplx> r;
  r.reserve(s.polys.size());
  for (const auto& f : s.polys) r.push_back(evaluate(f, x));
  return r;
}

void eval_with_gradient(const LaurentPoly& f, const std::vector<Cplx>& x, Cplx& value,
                        std::vector<Cplx>& grad) {
  int n = f.nvars;
  value = Cplx(0.0, 0.0);
  grad.assign(n, Cplx(0.0, 0.0));
  std::vector<Cplx> p(n), q(n), pref(n + 1), suf(n + 1);
  for (const auto& [e, c] : f.terms) {
    for (int i = 0; i < n; ++i) {
      if (e[i] == 0) {
        p[i] = Cplx(1.0, 0.0);
        q[i] = Cplx(0.0, 0.0); // unused
      } else {
        q[i] = ipow(x[i], e[i] - 1);
        p[i] = q[i] * x[i];
      }
    }
    pref[0] = Cplx(1.0, 0.0);
    for (int i = 0; i < n; ++i) pref[i + 1] = pref[i] * p[i];
    suf[n] = Cplx(1.0, 0.0);
    for (int i = n - 1; i >= 0; --i) suf[i] = suf[i + 1] * p[i];
    value += c.v * pref[n];
    for (int i = 0; i < n; ++i) {
      if (e[i] == 0) continue;
      double ei = mpz_get_d(e[i].get_mpz_t());
      grad[i] += c.v * ei * q[i] * pref[i] * suf[i + 1];
    }
  }
}

Int total_degree(const LaurentPoly& f) {
  Int best = 0;
  for (const auto& [e, c] : f.terms) {
    Int s = 0;
    for (const auto& k : e) s += k;
    if (s > best) best = s;
  }
  return best;
}

std::string default_var_name(int i) { return "x" + std::to_string(i + 1); }

static std::string rat_str(const Rat& r) { return r.get_str(); }

static std::string double_str(double d) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", d);
  std::string s(buf);
  // keep the token lexable as a decimal
  if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
      s.find("inf") == std::string::npos && s.find("nan") == std::string::npos)
    s += ".0";
  return s;
}

// sign: -1, 0 (always explicit "+"), magnitude text, needs_star
struct CoeffText {
  int sign;          // +1 or -1 for real coefficients, 0 for complex literals
  std::string mag;   // magnitude (real) or full "(a+b*i)" literal
  bool is_one;       // magnitude equals one (real case only)
};

static CoeffText coeff_text(const Coeff& c) {
  CoeffText t;
  if (c.is_real()) {
    if (c.exact) {
      t.sign = c.re < 0 ? -1 : 1;
      Rat m = c.re < 0 ? Rat(-c.re) : c.re;
      t.mag = rat_str(m);
      t.is_one = (m == 1);
    } else {
      double d = c.v.real();
      t.sign = d < 0 ? -1 : 1;
      t.mag = double_str(d < 0 ? -d : d);
      t.is_one = false;
    }
    return t;
  }
  t.sign = 0;
  t.is_one = false;
  std::string a, b;
  bool bneg;
  if (c.exact) {
    a = rat_str(c.re);
    bneg = c.im < 0;
    b = rat_str(bneg ? Rat(-c.im) : c.im);
  } else {
    a = double_str(c.v.real());
    bneg = c.v.imag() < 0;
    b = double_str(bneg ? -c.v.imag() : c.v.imag());
  }
  t.mag = "(" + a + (bneg ? "-" : "+") + b + "*i)";
  return t;
}

std::string to_string(const LaurentPoly& f, const std::vector<std::string>& names) {
  if (f.terms.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : f.terms) {
    CoeffText ct = coeff_text(c);
    std::string mono;
    for (int i = 0; i < f.nvars; ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += names[i];
      if (e[i] != 1) mono += "^" + e[i].get_str();
    }
    if (first) {
      if (ct.sign < 0) out << "-";
      first = false;
    } else {
      out << (ct.sign < 0 ? " - " : " + ");
    }
    if (mono.empty())
      out << ct.mag;
    else if (ct.sign == 0 || !ct.is_one)
      out << ct.mag << "*" << mono;
    else
      out << mono;
  }
  return out.str();
}

std::string to_string(const LaurentSystem& s) {
  std::ostringstream out;
  bool default_names = true;
  for (int i = 0; i < s.nvars; ++i)
    if (s.names[i] != default_var_name(i)) default_names = false;
  if (!default_names) {
    out << "vars:";
    for (const auto& n : s.names) out << " " << n;
    out << "\n";
  }
  for (const auto& f : s.polys) out << to_string(f, s.names) << ";\n";
  return out.str();
}

} // namespace tropcert
