#include "tropcert/tropism.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <string>

#include "tropcert/cone.hpp"
#include "tropcert/error.hpp"
#include "tropcert/polytope.hpp"

namespace tropcert {

namespace {

struct EdgeCone {
  IntVector dir;                 // primitive edge direction
  std::vector<IntVector> ineqs;  // primitive difference rows, deduplicated
};

std::vector<std::vector<EdgeCone>> build_edge_cones(
    const std::vector<std::vector<IntVector>>& supports, int nvars) {
  std::vector<std::vector<EdgeCone>> cones(supports.size());
  for (size_t i = 0; i < supports.size(); ++i) {
    for (const auto& e : edges(supports[i])) {
      EdgeCone c;
      c.dir = e.dir;
      std::set<IntVector> seen;
      for (int k = 0; k < (int)supports[i].size(); ++k) {
        if (k == e.a || k == e.b) continue;
        IntVector diff(nvars);
        bool zero = true;
        for (int j = 0; j < nvars; ++j) {
          diff[j] = supports[i][k][j] - supports[i][e.a][j];
          if (diff[j] != 0) zero = false;
        }
        if (zero) continue;
        diff = gcd_normalize(diff);
        // rows parallel to the edge direction are identically zero on the cone
        IntVector neg(nvars);
        for (int j = 0; j < nvars; ++j) neg[j] = -diff[j];
        if (diff == e.dir || neg == e.dir) continue;
        if (seen.insert(diff).second) c.ineqs.push_back(diff);
      }
      cones[i].push_back(std::move(c));
    }
  }
  return cones;
}

std::vector<IntVector> canonical_subspace(const std::vector<IntVector>& basis, int n) {
  if (basis.empty()) return {};
  auto w = kernel_basis(IntMatrix::from_rows(basis));
  std::vector<IntVector> b;
  if (w.empty()) {
    for (int i = 0; i < n; ++i) {
      IntVector e(n, Int(0));
      e[i] = 1;
      b.push_back(std::move(e));
    }
  } else {
    b = kernel_basis(IntMatrix::from_rows(w));
  }
  auto h = hnf(IntMatrix::from_rows(b));
  std::vector<IntVector> out;
  for (int i = 0; i < h.rank; ++i) out.push_back(h.h.row(i));
  return out;
}

// geometry-only identity: saturated lineality lattice plus sorted ray set
std::string cone_key(const DDCone& c) {
  std::string s;
  auto put = [&](const IntVector& v) {
    for (const auto& x : v) {
      s += x.get_str();
      s += ',';
    }
    s += ';';
  };
  s += 'L';
  for (const auto& l : canonical_subspace(c.lin, c.n)) put(l);
  s += 'R';
  std::vector<IntVector> rs;
  for (const auto& r : c.rays) rs.push_back(r.r);
  std::sort(rs.begin(), rs.end());
  for (const auto& r : rs) put(r);
  return s;
}

void drop_duplicates(std::vector<DDCone>& cs) {
  std::set<std::string> keys;
  std::vector<DDCone> kept;
  for (auto& c : cs)
    if (keys.insert(cone_key(c)).second) kept.push_back(std::move(c));
  cs = std::move(kept);
}

// Cones contained in another survivor are dropped: any one-dimensional face
// of a discarded intersection reappears as a face of a kept superset built
// from edges of the same exposed faces.
void absorb(std::vector<DDCone>& cs) {
  if (cs.size() <= 1) return;
  std::vector<char> alive(cs.size(), 1);
  for (size_t i = 0; i < cs.size(); ++i)
    for (size_t j = 0; j < cs.size(); ++j) {
      if (j == i || !alive[j]) continue;
      if (cs[j].lin.size() < cs[i].lin.size()) continue;
      if (cone_contains(cs[j], cs[i])) {
        alive[i] = 0;
        break;
      }
    }
  std::vector<DDCone> kept;
  for (size_t i = 0; i < cs.size(); ++i)
    if (alive[i]) kept.push_back(std::move(cs[i]));
  cs = std::move(kept);
}

bool reaches_positive_first(const DDCone& c) {
  for (const auto& l : c.lin)
    if (l[0] != 0) return true;
  for (const auto& r : c.rays)
    if (r.r[0] > 0) return true;
  return false;
}

} // namespace

std::vector<Tropism> enumerate_pretropisms(const std::vector<std::vector<IntVector>>& supports,
                                           int nvars) {
  int m = (int)supports.size();
  auto cones = build_edge_cones(supports, nvars);
  for (const auto& cs : cones)
    if (cs.empty()) return {}; // a point polytope exposes no edge anywhere

  // visit the most constrained polytopes first
  std::vector<int> order(m);
  for (int i = 0; i < m; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return cones[a].size() < cones[b].size();
  });

  std::set<IntVector> found;
  auto emit = [&](const IntVector& v) {
    if (v[0] > 0) found.insert(v);
  };

  std::vector<DDCone> level = {DDCone::full_space(nvars)};
  for (int d = 0; d < m; ++d) {
    int p = order[d];
    std::vector<DDCone> next;
    for (auto& cone : level) {
      // a lone ray survives iff every remaining exposed face keeps an edge
      if (cone.lin.empty() && cone.rays.size() == 1) {
        const IntVector& r = cone.rays[0].r;
        bool ok = r[0] > 0;
        for (int d2 = d; d2 < m && ok; ++d2)
          ok = face_indices(supports[order[d2]], r).size() >= 2;
        if (ok) emit(r);
        continue;
      }
      for (const auto& ec : cones[p]) {
        DDCone child = cone;
        child.cut_hyperplane(ec.dir);
        for (const auto& w : ec.ineqs) {
          if (child.is_zero()) break;
          child.cut_halfspace(w);
        }
        if (child.is_zero()) continue;
        // everything below stays in the closed halfspace v1 <= 0
        if (!reaches_positive_first(child)) continue;
        next.push_back(std::move(child));
      }
    }
    drop_duplicates(next);
    absorb(next);
    level = std::move(next);
  }
  for (const auto& cone : level)
    for (const auto& g : cone.one_dim_faces()) emit(g);

  std::vector<Tropism> out;
  for (const auto& v : found) {
    Tropism t;
    t.v = v;
    for (int i = 0; i < m; ++i) t.faces.push_back(face_indices(supports[i], v));
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<Tropism> enumerate_pretropisms(const LaurentSystem& sys) {
  std::vector<std::vector<IntVector>> supports;
  supports.reserve(sys.polys.size());
  for (const auto& f : sys.polys) supports.push_back(support(f));
  return enumerate_pretropisms(supports, sys.nvars);
}

LaurentPoly initial_form(const LaurentPoly& f, const IntVector& v) {
  if (f.terms.empty()) return f;
  auto sup = support(f);
  auto idx = face_indices(sup, v);
  LaurentPoly g(f.nvars);
  for (int i : idx) g.add_term(sup[i], f.terms.at(sup[i]));
  return g;
}

LaurentSystem initial_form_system(const LaurentSystem& sys, const IntVector& v) {
  LaurentSystem r;
  r.nvars = sys.nvars;
  r.names = sys.names;
  for (const auto& f : sys.polys) r.polys.push_back(initial_form(f, v));
  return r;
}

namespace {

IntVector orbit_normalize(const IntVector& v) { return gcd_normalize(v); }

} // namespace

std::vector<std::vector<int>> group_orbits(const std::vector<IntVector>& vs,
                                           const std::vector<std::vector<int>>& generators) {
  size_t n = vs.empty() ? 0 : vs[0].size();
  for (const auto& g : generators) {
    if (g.size() != n) throw Error("generator arity mismatch");
    std::vector<bool> hit(n, false);
    for (int im : g) {
      if (im < 0 || im >= (int)n || hit[im]) throw Error("generator is not a permutation");
      hit[im] = true;
    }
  }
  std::map<IntVector, int> where;
  for (size_t i = 0; i < vs.size(); ++i) {
    IntVector key = orbit_normalize(vs[i]);
    if (where.count(key)) throw Error("duplicate directions in orbit grouping");
    where[key] = (int)i;
  }
  std::vector<bool> assigned(vs.size(), false);
  std::vector<std::vector<int>> orbits;
  for (size_t i = 0; i < vs.size(); ++i) {
    if (assigned[i]) continue;
    std::set<IntVector> closure;
    std::queue<IntVector> work;
    IntVector start = orbit_normalize(vs[i]);
    closure.insert(start);
    work.push(start);
    while (!work.empty()) {
      IntVector cur = work.front();
      work.pop();
      for (const auto& g : generators) {
        IntVector img(n);
        for (size_t k = 0; k < n; ++k) img[g[k]] = cur[k];
        img = orbit_normalize(img);
        if (closure.insert(img).second) work.push(img);
      }
    }
    std::vector<int> orbit;
    for (const auto& w : closure) {
      auto it = where.find(w);
      if (it != where.end()) {
        orbit.push_back(it->second);
        assigned[it->second] = true;
      }
    }
    std::sort(orbit.begin(), orbit.end());
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

} // namespace tropcert
