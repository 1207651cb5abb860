#include "tropcert/lattice.hpp"

namespace tropcert {

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rs) {
  if (rs.empty()) return IntMatrix(0, 0);
  IntMatrix m(static_cast<int>(rs.size()), static_cast<int>(rs[0].size()));
  for (int i = 0; i < m.rows; ++i) {
    if (static_cast<int>(rs[i].size()) != m.cols) throw Error("from_rows: ragged rows");
    for (int j = 0; j < m.cols; ++j) m(i, j) = rs[i][j];
  }
  return m;
}

IntVector IntMatrix::row(int i) const {
  IntVector v(cols);
  for (int j = 0; j < cols; ++j) v[j] = (*this)(i, j);
  return v;
}

IntVector IntMatrix::col(int j) const {
  IntVector v(rows);
  for (int i = 0; i < rows; ++i) v[i] = (*this)(i, j);
  return v;
}

IntMatrix matmul(const IntMatrix& x, const IntMatrix& y) {
  if (x.cols != y.rows) throw Error("matmul: shape mismatch");
  IntMatrix z(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      if (x(i, k) == 0) continue;
      for (int j = 0; j < y.cols; ++j) z(i, j) += x(i, k) * y(k, j);
    }
  return z;
}

IntMatrix transpose(const IntMatrix& x) {
  IntMatrix z(x.cols, x.rows);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) z(j, i) = x(i, j);
  return z;
}

IntVector apply(const IntMatrix& m, const IntVector& v) {
  if (m.cols != static_cast<int>(v.size())) throw Error("apply: shape mismatch");
  IntVector w(m.rows);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) w[i] += m(i, j) * v[j];
  return w;
}

bool is_zero(const IntVector& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

IntVector gcd_normalize(const IntVector& v) {
  Int g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (g == 0) throw Error("gcd_normalize: zero vector");
  IntVector w(v.size());
  for (size_t i = 0; i < v.size(); ++i) w[i] = v[i] / g;
  return w;
}

IntVector sign_normalize_first(const IntVector& v) {
  for (const auto& x : v) {
    if (x == 0) continue;
    if (x > 0) return v;
    IntVector w(v.size());
    for (size_t i = 0; i < v.size(); ++i) w[i] = -v[i];
    return w;
  }
  return v;
}

HnfResult hnf(const IntMatrix& a) {
  HnfResult r;
  r.h = a;
  r.u = IntMatrix::identity(a.rows);
  IntMatrix& h = r.h;
  IntMatrix& u = r.u;
  int pr = 0; // pivot row
  for (int pc = 0; pc < a.cols && pr < a.rows; ++pc) {
    // clear the column below pr with gcd steps
    int nz = -1;
    for (int i = pr; i < a.rows; ++i)
      if (h(i, pc) != 0) { nz = i; break; }
    if (nz < 0) continue;
    if (nz != pr) {
      for (int j = 0; j < a.cols; ++j) std::swap(h(pr, j), h(nz, j));
      for (int j = 0; j < a.rows; ++j) std::swap(u(pr, j), u(nz, j));
    }
    for (int i = pr + 1; i < a.rows; ++i) {
      if (h(i, pc) == 0) continue;
      Int g, p, q;
      mpz_gcdext(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t(), h(pr, pc).get_mpz_t(), h(i, pc).get_mpz_t());
      Int x = h(pr, pc) / g, y = h(i, pc) / g;
      // rows (pr, i) <- (p*pr + q*i, -y*pr + x*i), determinant 1
      for (int j = 0; j < a.cols; ++j) {
        Int t0 = p * h(pr, j) + q * h(i, j);
        Int t1 = -y * h(pr, j) + x * h(i, j);
        h(pr, j) = t0;
        h(i, j) = t1;
      }
      for (int j = 0; j < a.rows; ++j) {
        Int t0 = p * u(pr, j) + q * u(i, j);
        Int t1 = -y * u(pr, j) + x * u(i, j);
        u(pr, j) = t0;
        u(i, j) = t1;
      }
    }
    if (h(pr, pc) < 0) {
      for (int j = 0; j < a.cols; ++j) h(pr, j) = -h(pr, j);
      for (int j = 0; j < a.rows; ++j) u(pr, j) = -u(pr, j);
    }
    // reduce entries above the pivot into [0, pivot)
    for (int i = 0; i < pr; ++i) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), h(i, pc).get_mpz_t(), h(pr, pc).get_mpz_t());
      if (q == 0) continue;
      for (int j = 0; j < a.cols; ++j) h(i, j) -= q * h(pr, j);
      for (int j = 0; j < a.rows; ++j) u(i, j) -= q * u(pr, j);
    }
    ++pr;
  }
  r.rank = pr;
  return r;
}

int rank(const IntMatrix& a) { return hnf(a).rank; }

Int det(const IntMatrix& a) {
  if (a.rows != a.cols) throw Error("det: matrix not square");
  int n = a.rows;
  if (n == 0) return 1;
  IntMatrix m = a;
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m(k, k) == 0) {
      int sw = -1;
      for (int i = k + 1; i < n; ++i)
        if (m(i, k) != 0) { sw = i; break; }
      if (sw < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(m(k, j), m(sw, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        Int t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign > 0 ? m(n - 1, n - 1) : Int(-m(n - 1, n - 1));
}

std::vector<IntVector> kernel_basis(const IntMatrix& a) {
  // rows of U matching zero rows of H in hnf(A^T) span the kernel of A
  HnfResult r = hnf(transpose(a));
  std::vector<IntVector> basis;
  for (int i = r.rank; i < r.u.rows; ++i) basis.push_back(r.u.row(i));
  return basis;
}

IntVector kernel_primitive(const IntMatrix& a) {
  auto basis = kernel_basis(a);
  if (basis.size() != 1) throw Error("kernel_primitive: kernel is not one-dimensional");
  return sign_normalize_first(gcd_normalize(basis[0]));
}

IntMatrix unimodular_with_first_column(const IntVector& v) {
  int n = static_cast<int>(v.size());
  if (n == 0 || is_zero(v)) throw Error("unimodular_with_first_column: zero vector");
  int unit = -1;
  for (int i = 0; i < n && unit < 0; ++i)
    if (v[i] == 1 || v[i] == -1) unit = i;
  if (unit >= 0 && n >= 2) {
    // complete v with standard basis vectors, skipping the unit row; the
    // determinant is v[unit]*(-1)^unit, fixed up to +1 below
    std::vector<int> fill;
    fill.reserve(n - 1);
    for (int k = 0; k < n; ++k)
      if (k != unit) fill.push_back(k);
    bool flip = (unit % 2 == 0 ? v[unit] : -v[unit]) < 0;
    if (flip && n >= 3) std::swap(fill[0], fill[1]);
    IntMatrix m(n, n);
    for (int r = 0; r < n; ++r) m(r, 0) = v[r];
    for (int j = 1; j < n; ++j) m(fill[j - 1], j) = (flip && n == 2) ? -1 : 1;
    return m;
  }
  IntVector w = v;
  IntMatrix m = IntMatrix::identity(n);
  for (int i = 1; i < n; ++i) {
    if (w[i] == 0) continue;
    Int g, p, q;
    mpz_gcdext(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t(), w[0].get_mpz_t(), w[i].get_mpz_t());
    Int x = w[0] / g, y = w[i] / g;
    // columns (0, i) of M pick up the inverse of the 2x2 gcd step
    for (int r = 0; r < n; ++r) {
      Int c0 = m(r, 0) * x + m(r, i) * y;
      Int ci = m(r, 0) * (-q) + m(r, i) * p;
      m(r, 0) = c0;
      m(r, i) = ci;
    }
    w[0] = g;
    w[i] = 0;
  }
  if (w[0] == -1 && n >= 2) {
    // double column flip keeps the determinant at one
    for (int r = 0; r < n; ++r) {
      m(r, 0) = -m(r, 0);
      m(r, 1) = -m(r, 1);
    }
    w[0] = 1;
  }
  if (w[0] != 1) throw Error("unimodular_with_first_column: vector is not primitive");
  return m;
}

IntMatrix inverse_unimodular(const IntMatrix& m) {
  if (m.rows != m.cols) throw Error("inverse_unimodular: matrix not square");
  HnfResult r = hnf(m);
  if (!(r.h == IntMatrix::identity(m.rows))) throw Error("inverse_unimodular: matrix is not unimodular");
  return r.u;
}

Int dot(const IntVector& x, const IntVector& y) {
  if (x.size() != y.size()) throw Error("dot: length mismatch");
  Int s = 0;
  for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

} // namespace tropcert
