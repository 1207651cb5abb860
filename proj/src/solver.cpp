#include "tropcert/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <thread>
#include <utility>

#include "tropcert/error.hpp"

namespace tropcert {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDivergeCap = 1e8;
constexpr double kRefineTol = 1e-12;
constexpr double kRegularTol = 1e-10;
constexpr long kMaxPaths = 10000;

double norm_inf(const std::vector<Cplx>& v) {
  double m = 0.0;
  for (const auto& z : v) m = std::max(m, std::abs(z));
  return m;
}

// Gaussian elimination with partial pivoting; overwrites b with the
// solution.  False when the best pivot falls at or below piv_tol.
bool lu_solve(std::vector<Cplx> a, std::vector<Cplx>& b, int n, double piv_tol) {
  for (int col = 0; col < n; ++col) {
    int piv = col;
    double best = std::abs(a[(size_t)col * n + col]);
    for (int r = col + 1; r < n; ++r) {
      double m = std::abs(a[(size_t)r * n + col]);
      if (m > best) {
        best = m;
        piv = r;
      }
    }
    if (!(best > piv_tol)) return false;
    if (piv != col) {
      for (int c2 = col; c2 < n; ++c2) std::swap(a[(size_t)piv * n + c2], a[(size_t)col * n + c2]);
      std::swap(b[piv], b[col]);
    }
    for (int r = col + 1; r < n; ++r) {
      Cplx m = a[(size_t)r * n + col] / a[(size_t)col * n + col];
      if (m == Cplx(0.0, 0.0)) continue;
      for (int c2 = col + 1; c2 < n; ++c2) a[(size_t)r * n + c2] -= m * a[(size_t)col * n + c2];
      b[r] -= m * b[col];
    }
  }
  for (int r = n - 1; r >= 0; --r) {
    Cplx v = b[r];
    for (int c2 = r + 1; c2 < n; ++c2) v -= a[(size_t)r * n + c2] * b[c2];
    b[r] = v / a[(size_t)r * n + r];
  }
  return true;
}

struct PathResult {
  enum class Kind { Failure, AtInfinity, Finite };
  Kind kind = Kind::Failure;
  NumericRoot root;
};

// Paths are tracked projectively: the system is homogenized with an extra
// coordinate and cut by a random affine patch, so diverging paths stay
// bounded and arrive at a regular point with a small last coordinate instead
// of blowing up mid-march.
struct Homotopy {
  const std::vector<LaurentPoly>* target = nullptr;   // divided, affine
  const std::vector<LaurentPoly>* target_h = nullptr; // homogenized
  const LaurentSystem* original = nullptr;
  std::vector<long> deg;
  std::vector<Int> deg_i;
  std::vector<Cplx> gamma, patch;
  Cplx eta;
  int n = 0; // affine dimension; tracking runs in n+1 coordinates

  // rows 0..n-1: (1-tau)*eta*(x_i^d - gamma_i*x0^d) + tau*f_i,
  // last row: <patch, x> - 1
  void eval(const std::vector<Cplx>& x, double tau, std::vector<Cplx>& h, std::vector<Cplx>& jac,
            std::vector<Cplx>& dtau) const {
    const int m = n + 1;
    std::vector<Cplx> grad(m);
    std::fill(jac.begin(), jac.end(), Cplx(0.0, 0.0));
    const Cplx start_w = (1.0 - tau) * eta;
    const Cplx& x0 = x[(size_t)n];
    for (int i = 0; i < n; ++i) {
      Cplx fv;
      eval_with_gradient((*target_h)[i], x, fv, grad);
      Cplx xp = ipow(x[(size_t)i], deg_i[(size_t)i] - 1);
      Cplx zp = ipow(x0, deg_i[(size_t)i] - 1);
      Cplx gv = xp * x[(size_t)i] - gamma[(size_t)i] * zp * x0;
      h[(size_t)i] = start_w * gv + tau * fv;
      dtau[(size_t)i] = fv - eta * gv;
      for (int j = 0; j < m; ++j) jac[(size_t)i * m + j] = tau * grad[(size_t)j];
      jac[(size_t)i * m + i] += start_w * (double)deg[(size_t)i] * xp;
      jac[(size_t)i * m + n] -= start_w * (double)deg[(size_t)i] * gamma[(size_t)i] * zp;
    }
    Cplx pv(-1.0, 0.0);
    for (int j = 0; j < m; ++j) {
      pv += patch[(size_t)j] * x[(size_t)j];
      jac[(size_t)n * m + j] = patch[(size_t)j];
    }
    h[(size_t)n] = pv;
    dtau[(size_t)n] = Cplx(0.0, 0.0);
  }

  void eval_target(const std::vector<Cplx>& x, std::vector<Cplx>& fv, std::vector<Cplx>& jac) const {
    std::vector<Cplx> grad(n);
    for (int i = 0; i < n; ++i) {
      eval_with_gradient((*target)[i], x, fv[(size_t)i], grad);
      for (int j = 0; j < n; ++j) jac[(size_t)i * n + j] = grad[(size_t)j];
    }
  }
};

PathResult track_path(const Homotopy& hom, long index) {
  const int n = hom.n;
  const int m = n + 1;
  std::vector<Cplx> x((size_t)m);
  long rem = index;
  for (int i = 0; i < n; ++i) {
    long branch = rem % hom.deg[(size_t)i];
    rem /= hom.deg[(size_t)i];
    x[(size_t)i] =
        std::polar(1.0, (std::arg(hom.gamma[(size_t)i]) + 2.0 * kPi * branch) / (double)hom.deg[(size_t)i]);
  }
  x[(size_t)n] = Cplx(1.0, 0.0);
  Cplx pv(0.0, 0.0);
  for (int j = 0; j < m; ++j) pv += hom.patch[(size_t)j] * x[(size_t)j];
  PathResult out;
  if (std::abs(pv) < 1e-8) return out; // start point sits on the patch hyperplane
  for (auto& z : x) z /= pv;

  std::vector<Cplx> hv((size_t)m), jac((size_t)m * m), dtau((size_t)m), step((size_t)m), xt((size_t)m);
  double tau = 0.0, h = 0.1;
  bool gave_up = false;
  for (int iter = 0; tau < 1.0; ++iter) {
    if (iter > 5000 || h < 1e-10 || norm_inf(x) > 1e12) {
      gave_up = true;
      break;
    }
    double dt = std::min(h, 1.0 - tau);
    hom.eval(x, tau, hv, jac, dtau);
    step = dtau;
    for (auto& z : step) z = -z;
    if (!lu_solve(jac, step, m, 0.0)) {
      h *= 0.5;
      continue;
    }
    for (int i = 0; i < m; ++i) xt[(size_t)i] = x[(size_t)i] + step[(size_t)i] * dt;
    double pred_move = norm_inf(step) * dt;
    const double tau2 = (dt >= 1.0 - tau) ? 1.0 : tau + dt;
    bool converged = false;
    int used = 0;
    double corr_move = 0.0;
    for (int it = 0; it < 3; ++it) {
      hom.eval(xt, tau2, hv, jac, dtau);
      step = hv;
      for (auto& z : step) z = -z;
      if (!lu_solve(jac, step, m, 0.0)) break;
      for (int i = 0; i < m; ++i) xt[(size_t)i] += step[(size_t)i];
      corr_move += norm_inf(step);
      used = it + 1;
      if (norm_inf(step) < 1e-10 * (1.0 + norm_inf(xt))) {
        converged = true;
        break;
      }
    }
    // a corrector that wandered far from the prediction has likely hopped
    // onto a neighboring path; treat it as a failed step
    if (!converged || corr_move > 4.0 * pred_move + 1e-4) {
      h *= 0.5;
      continue;
    }
    x = xt;
    tau = tau2;
    if (used <= 2) h = std::min(0.1, h * 1.5);
  }
  // A march that stalls within sight of the end usually sits next to a
  // singular endpoint; polish and classify it anyway.  Earlier stalls stay
  // failures.
  if (gave_up && tau < 0.99) return out;

  // Polish projectively at the end.  Endpoints at infinity are often
  // multiple, so Newton only contracts linearly there; iterate by step size,
  // not residual, to push the last coordinate as far down as it will go.
  for (int it = 0; it < 200; ++it) {
    hom.eval(x, 1.0, hv, jac, dtau);
    step = hv;
    for (auto& z : step) z = -z;
    if (!lu_solve(jac, step, m, 0.0)) break;
    for (int i = 0; i < m; ++i) x[(size_t)i] += step[(size_t)i];
    if (norm_inf(step) < 1e-15 * (1.0 + norm_inf(x))) break;
  }

  double amax = 0.0;
  for (int i = 0; i < n; ++i) amax = std::max(amax, std::abs(x[(size_t)i]));
  if (amax > kDivergeCap * std::abs(x[(size_t)n])) {
    out.kind = PathResult::Kind::AtInfinity;
    return out;
  }

  std::vector<Cplx> y((size_t)n);
  for (int i = 0; i < n; ++i) y[(size_t)i] = x[(size_t)i] / x[(size_t)n];
  const std::vector<Cplx> y0 = y;
  const double scale0 = 1.0 + norm_inf(y0);
  std::vector<Cplx> fv((size_t)n), jaca((size_t)n * n), stepa((size_t)n);
  double res = 0.0;
  for (int it = 0; it < 50; ++it) {
    hom.eval_target(y, fv, jaca);
    res = norm_inf(fv);
    if (res <= kRefineTol) break;
    stepa = fv;
    for (auto& z : stepa) z = -z;
    if (!lu_solve(jaca, stepa, n, 0.0)) break;
    for (int i = 0; i < n; ++i) y[(size_t)i] += stepa[(size_t)i];
    if (norm_inf(y) > 1e12) break;
  }
  hom.eval_target(y, fv, jaca);
  res = norm_inf(fv);

  // The refinement must stay local: a Newton run that travels a long way has
  // left its own path and says nothing about this endpoint.  Such runs come
  // from near-infinity points that stagnated above the cap; sort them by
  // where they started.
  double moved = 0.0;
  for (int i = 0; i < n; ++i) moved = std::max(moved, std::abs(y[(size_t)i] - y0[(size_t)i]));
  bool trusted = moved <= 0.05 * scale0;
  if (gave_up && res > kRegularTol) trusted = false;
  if (trusted && res <= 1e-6) {
    out.kind = PathResult::Kind::Finite;
    out.root.coords = y;
    double res_orig = 0.0;
    for (const auto& v : evaluate(*hom.original, y)) res_orig = std::max(res_orig, std::abs(v));
    out.root.residual = res_orig;
    out.root.suspect = res > kRegularTol;
    return out;
  }
  if (norm_inf(y0) > 1e3) out.kind = PathResult::Kind::AtInfinity;
  return out;
}

SolveReport run_homotopy(const LaurentSystem& s, const std::vector<LaurentPoly>& target,
                         const std::vector<long>& deg, long paths, std::uint64_t seed, int jobs) {
  const int n = s.nvars;
  std::vector<LaurentPoly> target_h;
  for (size_t i = 0; i < target.size(); ++i) {
    LaurentPoly g(n + 1);
    Int d(deg[i]);
    for (const auto& [e, co] : target[i].terms) {
      IntVector e2 = e;
      Int grade(0);
      for (const auto& c : e) grade += c;
      e2.push_back(Int(d - grade));
      g.add_term(e2, co);
    }
    target_h.push_back(std::move(g));
  }

  Homotopy hom;
  hom.target = &target;
  hom.target_h = &target_h;
  hom.original = &s;
  hom.deg = deg;
  for (long d : deg) hom.deg_i.emplace_back(d);
  hom.n = n;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * kPi);
  hom.eta = std::polar(1.0, ang(rng));
  for (int i = 0; i < hom.n; ++i) hom.gamma.push_back(std::polar(1.0, ang(rng)));
  for (int i = 0; i <= hom.n; ++i) hom.patch.push_back(std::polar(1.0, ang(rng)));

  std::vector<PathResult> results((size_t)paths);
  int workers = std::max(1, std::min<int>(jobs, (int)std::min<long>(paths, 64)));
  if (workers == 1) {
    for (long p = 0; p < paths; ++p) results[(size_t)p] = track_path(hom, p);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errs((size_t)workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (long p = w; p < paths; p += workers) results[(size_t)p] = track_path(hom, p);
        } catch (...) {
          errs[(size_t)w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errs)
      if (e) std::rethrow_exception(e);
  }

  SolveReport rep;
  for (auto& r : results) {
    switch (r.kind) {
      case PathResult::Kind::Finite: rep.roots.push_back(std::move(r.root)); break;
      case PathResult::Kind::AtInfinity: ++rep.at_infinity; break;
      case PathResult::Kind::Failure: ++rep.failures; break;
    }
  }
  return rep;
}

} // namespace

BinomialNormalForm binomial_normal_form(const LaurentSystem& s) {
  BinomialNormalForm out;
  std::vector<IntVector> rows;
  for (const auto& f : s.polys) {
    if (f.nterms() != 2) throw Error("not binomial");
    auto it = f.terms.begin();
    const auto& first = *it;
    const auto& second = *++it;
    bool flip = first.second.v.real() <= 0.0 && second.second.v.real() > 0.0;
    const auto& p = flip ? second : first;
    const auto& q = flip ? first : second;
    IntVector d(p.first.size());
    for (size_t k = 0; k < d.size(); ++k) d[k] = p.first[k] - q.first[k];
    rows.push_back(std::move(d));
    out.c.push_back((-(q.second / p.second)).v);
  }
  out.a = IntMatrix::from_rows(rows);
  return out;
}

std::vector<NumericRoot> solve_binomial_square(const IntMatrix& b, const std::vector<Cplx>& c) {
  const int m = b.rows;
  if (b.cols != m || (int)c.size() != m) throw Error("dimension mismatch");
  if (m == 0) return {};
  for (const auto& z : c)
    if (z == Cplx(0.0, 0.0)) throw Error("zero right-hand side");
  HnfResult hr = hnf(b);
  if (hr.rank != m) throw Error("not finitely many roots");

  // u*b = h is upper triangular, so x^h = c' with c'_i = prod_j c_j^{u_ij}
  std::vector<Cplx> cp(m);
  for (int i = 0; i < m; ++i) {
    Cplx prod(1.0, 0.0);
    for (int j = 0; j < m; ++j) prod *= ipow(c[j], hr.u(i, j));
    cp[i] = prod;
  }

  std::vector<std::vector<Cplx>> sols{std::vector<Cplx>(m)};
  for (int i = m - 1; i >= 0; --i) {
    long k = hr.h(i, i).get_si();
    std::vector<std::vector<Cplx>> next;
    next.reserve(sols.size() * (size_t)k);
    for (const auto& sol : sols) {
      Cplx rhs = cp[i];
      for (int j = i + 1; j < m; ++j) rhs *= ipow(sol[j], Int(-hr.h(i, j)));
      double r = std::pow(std::abs(rhs), 1.0 / (double)k);
      double th = std::arg(rhs);
      for (long br = 0; br < k; ++br) {
        auto s2 = sol;
        s2[i] = std::polar(r, (th + 2.0 * kPi * (double)br) / (double)k);
        next.push_back(std::move(s2));
      }
    }
    sols = std::move(next);
  }

  std::vector<NumericRoot> out;
  out.reserve(sols.size());
  for (auto& sol : sols) {
    double res = 0.0;
    for (int i = 0; i < m; ++i) {
      Cplx v(1.0, 0.0);
      for (int j = 0; j < m; ++j) v *= ipow(sol[j], b(i, j));
      res = std::max(res, std::abs(v - c[i]));
    }
    bool sus = res > kRegularTol;
    out.push_back({std::move(sol), res, std::nullopt, sus});
  }
  return out;
}

SolveReport solve_square_numeric(const LaurentSystem& s, std::uint64_t seed, int jobs) {
  const int n = s.nvars;
  if ((int)s.polys.size() != n) throw Error("dimension mismatch");
  if (n == 0) return {};
  if (n > 8) throw Error("too many variables for dense continuation");

  std::vector<LaurentPoly> target;
  std::vector<long> deg;
  long paths = 1;
  for (const auto& p : s.polys) {
    if (p.is_zero()) throw Error("not finitely many roots");
    target.push_back(divide_common_monomial(p).first);
    long d = total_degree(target.back()).get_si();
    if (d == 0) return {}; // a nonzero constant equation: no solutions
    if (d > kMaxPaths || paths > kMaxPaths / d) throw Error("total degree product exceeds 10000");
    deg.push_back(d);
    paths *= d;
  }

  SolveReport best;
  bool have = false;
  for (int attempt = 0; attempt < 2; ++attempt) {
    SolveReport rep = run_homotopy(s, target, deg, paths, seed + (std::uint64_t)attempt, jobs);
    if (!have || rep.failures < best.failures) {
      best = std::move(rep);
      have = true;
    }
    if (best.failures == 0) break;
  }
  return best;
}

LaurentSystem embed_slack(const LaurentSystem& s, std::uint64_t seed) {
  const int n = s.nvars;
  if ((int)s.polys.size() != n + 1) throw Error("embed_slack: need n+1 equations in n unknowns");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * kPi);
  LaurentSystem out;
  out.nvars = n + 1;
  if ((int)s.names.size() == n) {
    out.names = s.names;
    out.names.push_back("s");
  }
  IntVector slack_e((size_t)n + 1, Int(0));
  slack_e[(size_t)n] = 1;
  for (const auto& f : s.polys) {
    LaurentPoly g(n + 1);
    for (const auto& [e, co] : f.terms) {
      IntVector e2 = e;
      e2.push_back(Int(0));
      g.add_term(e2, co);
    }
    g.add_term(slack_e, Coeff::approx(std::polar(1.0, ang(rng))));
    out.polys.push_back(std::move(g));
  }
  return out;
}

SecondTerm second_term_linear(const LaurentSystem& s, const NumericRoot& root) {
  const int n = s.nvars;
  const int m = n - 1;
  const int neq = (int)s.polys.size();
  if (m <= 0 || (int)root.coords.size() != m) throw Error("dimension mismatch");

  std::vector<std::vector<Cplx>> a((size_t)neq, std::vector<Cplx>(m, Cplx(0.0, 0.0)));
  std::vector<Cplx> b((size_t)neq, Cplx(0.0, 0.0));
  for (int i = 0; i < neq; ++i) {
    const auto& f = s.polys[i];
    if (f.is_zero()) continue;
    Int lvl = f.terms.begin()->first[0];
    for (const auto& [e, co] : f.terms) lvl = std::min(lvl, e[0]);
    for (const auto& [e, co] : f.terms) {
      if (e[0] != lvl && e[0] != lvl + 1) continue;
      Cplx mv = co.v;
      for (int k = 1; k < n; ++k) mv *= ipow(root.coords[(size_t)k - 1], e[k]);
      if (e[0] == lvl) {
        for (int k = 1; k < n; ++k)
          if (e[k] != 0)
            a[(size_t)i][(size_t)k - 1] += mv * mpz_get_d(e[k].get_mpz_t()) / root.coords[(size_t)k - 1];
      } else {
        b[(size_t)i] -= mv;
      }
    }
  }

  // least squares through the normal equations
  std::vector<Cplx> g((size_t)m * m, Cplx(0.0, 0.0)), rhs((size_t)m, Cplx(0.0, 0.0));
  for (int c1 = 0; c1 < m; ++c1) {
    for (int c2 = 0; c2 < m; ++c2) {
      Cplx acc(0.0, 0.0);
      for (int i = 0; i < neq; ++i) acc += std::conj(a[(size_t)i][(size_t)c1]) * a[(size_t)i][(size_t)c2];
      g[(size_t)c1 * m + c2] = acc;
    }
    Cplx acc(0.0, 0.0);
    for (int i = 0; i < neq; ++i) acc += std::conj(a[(size_t)i][(size_t)c1]) * b[(size_t)i];
    rhs[(size_t)c1] = acc;
  }
  double scale = 1.0;
  for (int k = 0; k < m; ++k) scale = std::max(scale, std::abs(g[(size_t)k * m + k]));

  SecondTerm out;
  std::vector<Cplx> z = rhs;
  if (!lu_solve(g, z, m, 1e-12 * scale)) {
    out.status = SecondTerm::Status::Underdetermined;
    return out;
  }
  double res = 0.0;
  for (int i = 0; i < neq; ++i) {
    Cplx r = -b[(size_t)i];
    for (int k = 0; k < m; ++k) r += a[(size_t)i][(size_t)k] * z[(size_t)k];
    res = std::max(res, std::abs(r));
  }
  out.z = std::move(z);
  out.residual = res;
  out.status = res < 1e-8 ? SecondTerm::Status::Found : SecondTerm::Status::None;
  return out;
}

} // namespace tropcert
