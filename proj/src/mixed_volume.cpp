#include "tropcert/mixed_volume.hpp"

#include <algorithm>
#include <exception>
#include <random>
#include <set>
#include <string>
#include <thread>

#include "tropcert/cone.hpp"
#include "tropcert/error.hpp"
#include "tropcert/polytope.hpp"
#include "tropcert/rational_lp.hpp"

namespace tropcert {
namespace {

constexpr std::uint64_t kHeightMask = 0xFFFF;
constexpr const char* kDegenerate = "degenerate lifting: reseed";

IntVector diff(const IntVector& x, const IntVector& y) {
  IntVector d(x.size());
  for (size_t i = 0; i < x.size(); ++i) d[i] = x[i] - y[i];
  return d;
}

Rat rat_dot(const IntVector& p, const std::vector<Rat>& v) {
  Rat s = 0;
  for (size_t i = 0; i < p.size(); ++i) s += Rat(p[i]) * v[i];
  return s;
}

void check_square(const std::vector<std::vector<IntVector>>& supports) {
  if (supports.empty()) throw Error("dimension mismatch");
  const size_t n = supports.size();
  for (const auto& s : supports) {
    if (s.empty()) throw Error("dimension mismatch");
    for (const auto& p : s)
      if (p.size() != n) throw Error("dimension mismatch");
  }
}

LiftedSupport random_from(const std::vector<IntVector>& support, std::mt19937_64& rng) {
  LiftedSupport out;
  out.kind = LiftKind::Random;
  out.points = support;
  out.lifts.reserve(support.size());
  for (size_t i = 0; i < support.size(); ++i)
    out.lifts.emplace_back(static_cast<unsigned long>(rng() & kHeightMask));
  return out;
}

LiftedSupport tau_from(const std::vector<IntVector>& support, std::mt19937_64& rng) {
  LiftedSupport out;
  out.kind = LiftKind::Tau;
  out.points.reserve(support.size());
  out.lifts.reserve(support.size());
  for (const auto& a : support) {
    if (a.empty()) throw Error("dimension mismatch");
    IntVector base(a.size());
    base[0] = static_cast<unsigned long>(rng() & kHeightMask);
    for (size_t i = 1; i < a.size(); ++i) base[i] = a[i];
    out.points.push_back(std::move(base));
    out.lifts.push_back(a[0]);
  }
  return out;
}

struct Ctx {
  const std::vector<LiftedSupport>* lifted = nullptr;
  int m = 0;
  int n = 0;
  bool strict = false;
  bool pin_slack = false;
  std::vector<std::vector<std::pair<int, int>>> pairs;
};

void leaf(const Ctx& c, const std::vector<std::pair<int, int>>& chosen,
          std::vector<MixedCell>& out) {
  const auto& supports = *c.lifted;
  IntMatrix e(c.m, c.n);
  for (int i = 0; i < c.m; ++i) {
    const auto& s = supports[i];
    for (int j = 0; j < c.n; ++j)
      e(i, j) = s.points[chosen[i].first][j] - s.points[chosen[i].second][j];
  }

  if (c.strict) {
    std::vector<Rat> rhs(c.m);
    for (int i = 0; i < c.m; ++i) {
      const auto& s = supports[i];
      rhs[i] = Rat(s.lifts[chosen[i].second] - s.lifts[chosen[i].first]);
    }
    std::vector<Rat> v = solve_linear(e, rhs);
    if (v.empty()) throw Error(kDegenerate);
    for (int i = 0; i < c.m; ++i) {
      const auto& s = supports[i];
      Rat low = rat_dot(s.points[chosen[i].first], v) + s.lifts[chosen[i].first];
      for (size_t r = 0; r < s.points.size(); ++r) {
        if (static_cast<int>(r) == chosen[i].first || static_cast<int>(r) == chosen[i].second)
          continue;
        Rat val = rat_dot(s.points[r], v) + s.lifts[r];
        if (val == low) throw Error(kDegenerate);
        if (val < low) return;
      }
    }
    if (c.pin_slack && v[0] != 0) return;
    out.push_back(MixedCell{chosen, std::move(v), Int(abs(det(e)))});
    return;
  }

  // Ties are structural here, so the pairs alone may underdetermine the
  // normal.  The cell normals through this tuple are the vertices of its
  // feasible normal polyhedron {v : pairs minimal}, computed exactly on the
  // homogenization (lambda, v).
  std::vector<IntVector> eqs, ineqs;
  if (c.pin_slack) {
    IntVector slack(c.n + 1);
    slack[1] = 1;
    eqs.push_back(std::move(slack));
  }
  for (int i = 0; i < c.m; ++i) {
    const auto& s = supports[i];
    const auto& [a, b] = chosen[i];
    IntVector eq(c.n + 1);
    eq[0] = -(s.lifts[b] - s.lifts[a]);
    for (int j = 0; j < c.n; ++j) eq[j + 1] = s.points[a][j] - s.points[b][j];
    eqs.push_back(std::move(eq));
    for (size_t r = 0; r < s.points.size(); ++r) {
      if (static_cast<int>(r) == a || static_cast<int>(r) == b) continue;
      IntVector ge(c.n + 1);
      ge[0] = -(s.lifts[a] - s.lifts[r]);
      for (int j = 0; j < c.n; ++j) ge[j + 1] = s.points[r][j] - s.points[a][j];
      ineqs.push_back(std::move(ge));
    }
  }
  IntVector lambda(c.n + 1);
  lambda[0] = 1;
  ineqs.push_back(std::move(lambda));

  ConeOneDim res = cone_one_dim_faces(c.n + 1, eqs, ineqs);
  if (res.lineality_dim > 0) return;
  Int vol = c.m == c.n ? Int(abs(det(e))) : Int(0);
  for (const auto& ray : res.rays) {
    if (ray[0] <= 0) continue;
    std::vector<Rat> v(c.n);
    for (int j = 0; j < c.n; ++j) {
      v[j] = Rat(ray[j + 1], ray[0]);
      v[j].canonicalize();
    }
    out.push_back(MixedCell{chosen, std::move(v), vol});
  }
}

void dfs(const Ctx& c, int depth, size_t offset, size_t stride,
         std::vector<std::pair<int, int>>& chosen, std::vector<LinRow>& rows,
         std::vector<IntVector>& dir_rows, std::vector<MixedCell>& out) {
  const auto& s = (*c.lifted)[depth];
  const auto& plist = c.pairs[depth];
  const size_t first = depth == 0 ? offset : 0;
  const size_t step = depth == 0 ? stride : 1;
  for (size_t pi = first; pi < plist.size(); pi += step) {
    const auto& [a, b] = plist[pi];
    const size_t mark = rows.size();
    IntVector d = diff(s.points[a], s.points[b]);
    rows.push_back(make_row(d, Rel::EQ, Rat(s.lifts[b] - s.lifts[a])));
    for (size_t r = 0; r < s.points.size(); ++r) {
      if (static_cast<int>(r) == a || static_cast<int>(r) == b) continue;
      rows.push_back(
          make_row(diff(s.points[r], s.points[a]), Rel::GE, Rat(s.lifts[a] - s.lifts[r])));
    }
    if (rational_feasible(c.n, rows)) {
      if (c.strict) {
        dir_rows.push_back(d);
        if (rank(IntMatrix::from_rows(dir_rows)) != depth + 1) throw Error(kDegenerate);
      }
      chosen.emplace_back(a, b);
      if (depth + 1 == c.m)
        leaf(c, chosen, out);
      else
        dfs(c, depth + 1, offset, stride, chosen, rows, dir_rows, out);
      chosen.pop_back();
      if (c.strict) dir_rows.pop_back();
    }
    rows.resize(mark);
  }
}

void worker(const Ctx& c, size_t offset, size_t stride, std::vector<MixedCell>& out) {
  std::vector<std::pair<int, int>> chosen;
  std::vector<LinRow> rows;
  std::vector<IntVector> dir_rows;
  if (c.pin_slack) {
    IntVector e0(c.n);
    e0[0] = 1;
    rows.push_back(make_row(e0, Rel::EQ, 0));
  }
  dfs(c, 0, offset, stride, chosen, rows, dir_rows, out);
}

std::vector<MixedCell> search_all(const Ctx& c, int jobs) {
  const int workers =
      std::max(1, std::min<int>(jobs, static_cast<int>(c.pairs[0].size())));
  std::vector<std::vector<MixedCell>> outs(workers);
  if (workers == 1) {
    worker(c, 0, 1, outs[0]);
  } else {
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errs(workers);
    threads.reserve(workers);
    for (int w = 0; w < workers; ++w)
      threads.emplace_back([&c, &outs, &errs, w, workers] {
        try {
          worker(c, w, workers, outs[w]);
        } catch (...) {
          errs[w] = std::current_exception();
        }
      });
    for (auto& t : threads) t.join();
    for (auto& e : errs)
      if (e) std::rethrow_exception(e);
  }

  std::vector<MixedCell> all;
  for (auto& o : outs)
    for (auto& cell : o) all.push_back(std::move(cell));
  std::sort(all.begin(), all.end(), [](const MixedCell& x, const MixedCell& y) {
    if (x.normal != y.normal) return x.normal < y.normal;
    if (x.volume != y.volume) return x.volume > y.volume;
    return x.edges < y.edges;
  });
  if (!c.strict) {
    std::vector<MixedCell> uniq;
    for (auto& cell : all)
      if (uniq.empty() || uniq.back().normal != cell.normal) uniq.push_back(std::move(cell));
    all = std::move(uniq);
  }
  return all;
}

} // namespace

LiftedSupport lift_random(const std::vector<IntVector>& support, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_from(support, rng);
}

LiftedSupport lift_tau(const std::vector<IntVector>& support, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return tau_from(support, rng);
}

std::vector<LiftedSupport> lift_random_tuple(const std::vector<std::vector<IntVector>>& supports,
                                             std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<LiftedSupport> out;
  out.reserve(supports.size());
  for (const auto& s : supports) out.push_back(random_from(s, rng));
  return out;
}

std::vector<LiftedSupport> lift_tau_tuple(const std::vector<std::vector<IntVector>>& supports,
                                          std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<LiftedSupport> out;
  out.reserve(supports.size());
  for (const auto& s : supports) out.push_back(tau_from(s, rng));
  return out;
}

std::vector<MixedCell> mixed_cells(const std::vector<LiftedSupport>& lifted,
                                   bool only_zero_slack, int jobs) {
  if (lifted.empty()) throw Error("dimension mismatch");
  Ctx c;
  c.lifted = &lifted;
  c.m = static_cast<int>(lifted.size());
  c.strict = true;
  for (const auto& l : lifted) {
    if (l.points.empty() || l.points.size() != l.lifts.size())
      throw Error("dimension mismatch");
    if (l.kind == LiftKind::Tau) c.strict = false;
  }
  c.n = static_cast<int>(lifted[0].points[0].size());
  for (const auto& l : lifted)
    for (const auto& p : l.points)
      if (static_cast<int>(p.size()) != c.n) throw Error("dimension mismatch");
  if (c.m > c.n || (c.strict && c.m != c.n)) throw Error("dimension mismatch");
  c.pin_slack = only_zero_slack || (!c.strict && c.m < c.n);

  c.pairs.resize(c.m);
  for (int i = 0; i < c.m; ++i) {
    const int k = static_cast<int>(lifted[i].points.size());
    for (int a = 0; a < k; ++a)
      for (int b = a + 1; b < k; ++b) c.pairs[i].emplace_back(a, b);
    if (c.pairs[i].empty()) return {};
  }
  return search_all(c, jobs);
}

std::vector<IntVector> tropisms_from_cells(const std::vector<MixedCell>& cells) {
  std::set<IntVector> out;
  for (const auto& cell : cells) {
    if (cell.normal.empty() || cell.normal[0] != 0) continue;
    const size_t n = cell.normal.size();
    Int mult = 1;
    for (size_t i = 1; i < n; ++i) mult = lcm(mult, Int(cell.normal[i].get_den()));
    IntVector v(n);
    v[0] = mult;
    for (size_t i = 1; i < n; ++i) {
      Rat scaled = cell.normal[i] * Rat(mult);
      v[i] = scaled.get_num();
    }
    out.insert(gcd_normalize(v));
  }
  return {out.begin(), out.end()};
}

Int mixed_volume(const std::vector<std::vector<IntVector>>& supports, std::uint64_t seed) {
  check_square(supports);
  for (std::uint64_t attempt = 0; attempt < 32; ++attempt) {
    std::vector<LiftedSupport> lifted = lift_random_tuple(supports, seed + attempt);
    try {
      Int total = 0;
      for (const auto& cell : mixed_cells(lifted)) total += cell.volume;
      return total;
    } catch (const Error& err) {
      if (std::string(err.what()) != kDegenerate) throw;
    }
  }
  throw Error("mixed_volume: degenerate liftings persisted");
}

Int mixed_volume_recursive(const std::vector<std::vector<IntVector>>& supports) {
  check_square(supports);
  const int n = static_cast<int>(supports.size());
  if (n == 1) {
    Int lo = supports[0][0][0];
    Int hi = lo;
    for (const auto& p : supports[0]) {
      if (p[0] < lo) lo = p[0];
      if (p[0] > hi) hi = p[0];
    }
    return hi - lo;
  }

  std::vector<IntVector> dirs;
  {
    std::set<IntVector> seen;
    for (int k = 1; k < n; ++k) {
      const auto& pts = supports[k];
      for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j) {
          IntVector d = diff(pts[j], pts[i]);
          if (is_zero(d)) continue;
          d = sign_normalize_first(gcd_normalize(d));
          if (seen.insert(d).second) dirs.push_back(std::move(d));
        }
    }
  }

  // Every normal with a nonzero summand has the trailing faces jointly
  // spanning its orthogonal hyperplane, so it is the kernel of n-1
  // independent difference directions.
  std::set<IntVector> cands;
  const int k = n - 1;
  const int m = static_cast<int>(dirs.size());
  if (m >= k) {
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
      std::vector<IntVector> sel;
      sel.reserve(k);
      for (int i : idx) sel.push_back(dirs[i]);
      IntMatrix rows = IntMatrix::from_rows(sel);
      if (rank(rows) == k) cands.insert(kernel_primitive(rows));
      int i = k - 1;
      while (i >= 0 && idx[i] == m - k + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }

  Int total = 0;
  for (const auto& cand : cands) {
    for (int sgn : {1, -1}) {
      IntVector v = cand;
      if (sgn < 0)
        for (auto& x : v) x = -x;
      bool flat = false;
      std::vector<std::vector<int>> faces(n);
      for (int i = 1; i < n && !flat; ++i) {
        faces[i] = face_indices(supports[i], v);
        if (faces[i].size() < 2) flat = true;
      }
      if (flat) continue;
      Int p1 = support_value(supports[0], v);
      if (p1 == 0) continue;
      IntMatrix t = transpose(unimodular_with_first_column(v));
      std::vector<std::vector<IntVector>> sub;
      sub.reserve(n - 1);
      for (int i = 1; i < n; ++i) {
        std::vector<IntVector> proj;
        proj.reserve(faces[i].size());
        for (int pi : faces[i]) {
          IntVector w = tropcert::apply(t, supports[i][pi]);
          proj.emplace_back(w.begin() + 1, w.end());
        }
        sub.push_back(std::move(proj));
      }
      total -= p1 * mixed_volume_recursive(sub);
    }
  }
  return total;
}

} // namespace tropcert
