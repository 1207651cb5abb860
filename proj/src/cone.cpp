#include "tropcert/cone.hpp"

#include <algorithm>
#include <set>

#include "tropcert/error.hpp"

namespace tropcert {

namespace {

bool tight_subset(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if ((a[i] & b[i]) != a[i]) return false;
  return true;
}

bool adjacent_pair(const std::vector<DDRay>& rays, size_t ip, size_t in) {
  std::vector<std::uint64_t> common(rays[ip].tight.size());
  for (size_t k = 0; k < common.size(); ++k)
    common[k] = rays[ip].tight[k] & rays[in].tight[k];
  for (size_t k = 0; k < rays.size(); ++k) {
    if (k == ip || k == in) continue;
    if (tight_subset(common, rays[k].tight)) return false;
  }
  return true;
}

bool all_zero(const IntVector& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

} // namespace

DDCone DDCone::full_space(int n) {
  DDCone c;
  c.n = n;
  for (int i = 0; i < n; ++i) {
    IntVector e(n, Int(0));
    e[i] = 1;
    c.lin.push_back(std::move(e));
  }
  return c;
}

// Removes the lineality direction not orthogonal to w, reduces the rest of
// the basis into w's hyperplane, projects the rays along it.  Projection
// keeps every tight pattern: processed rows all vanish on the pivot.
IntVector DDCone::split_lineality(const IntVector& w, size_t pivot) {
  Int ld = dot(w, lin[pivot]);
  IntVector ls = lin[pivot];
  if (ld < 0) {
    for (auto& x : ls) x = -x;
    ld = -ld;
  }
  std::vector<IntVector> nl;
  for (size_t i = 0; i < lin.size(); ++i) {
    if (i == pivot) continue;
    Int li = dot(w, lin[i]);
    IntVector v(n);
    for (int c = 0; c < n; ++c) v[c] = ld * lin[i][c] - li * ls[c];
    nl.push_back(gcd_normalize(v));
  }
  lin = std::move(nl);
  for (auto& ray : rays) {
    Int rv = dot(w, ray.r);
    if (rv == 0) continue;
    IntVector v(n);
    for (int c = 0; c < n; ++c) v[c] = ld * ray.r[c] - rv * ls[c];
    ray.r = gcd_normalize(v);
  }
  return ls;
}

void DDCone::cut_halfspace(IntVector w) {
  if (is_zero() || all_zero(w)) return;
  w = gcd_normalize(w);
  for (const auto& row : ineq_rows)
    if (row == w) return;

  size_t bit = ineq_rows.size();
  size_t words = bit / 64 + 1;
  for (auto& r : rays) r.tight.resize(words, 0);
  auto mark = [&](DDRay& r) { r.tight[bit / 64] |= 1ull << (bit % 64); };

  size_t pivot = lin.size();
  for (size_t i = 0; i < lin.size(); ++i)
    if (dot(w, lin[i]) != 0) {
      pivot = i;
      break;
    }

  if (pivot < lin.size()) {
    IntVector ls = split_lineality(w, pivot);
    for (auto& r : rays) mark(r); // all projected into the hyperplane
    DDRay r0;
    r0.r = std::move(ls);
    r0.tight.assign(words, 0);
    for (size_t k = 0; k < bit; ++k) r0.tight[k / 64] |= 1ull << (k % 64);
    rays.push_back(std::move(r0));
  } else {
    std::vector<Int> val(rays.size());
    std::vector<size_t> pos, neg;
    for (size_t i = 0; i < rays.size(); ++i) {
      val[i] = dot(w, rays[i].r);
      if (val[i] > 0) pos.push_back(i);
      if (val[i] < 0) neg.push_back(i);
    }
    if (neg.empty()) {
      for (size_t i = 0; i < rays.size(); ++i)
        if (val[i] == 0) mark(rays[i]);
    } else {
      std::vector<DDRay> next;
      for (size_t i = 0; i < rays.size(); ++i)
        if (val[i] >= 0) {
          if (val[i] == 0) mark(rays[i]);
          next.push_back(rays[i]);
        }
      for (size_t ip : pos)
        for (size_t in : neg) {
          if (!adjacent_pair(rays, ip, in)) continue;
          DDRay nr;
          nr.r.resize(n);
          for (int c = 0; c < n; ++c)
            nr.r[c] = val[ip] * rays[in].r[c] - val[in] * rays[ip].r[c];
          nr.r = gcd_normalize(nr.r);
          nr.tight.assign(words, 0);
          for (size_t k = 0; k < bit; ++k)
            if (dot(ineq_rows[k], nr.r) == 0) nr.tight[k / 64] |= 1ull << (k % 64);
          mark(nr);
          next.push_back(std::move(nr));
        }
      rays = std::move(next);
    }
  }
  ineq_rows.push_back(std::move(w));
}

void DDCone::cut_hyperplane(IntVector d) {
  if (is_zero() || all_zero(d)) return;
  d = gcd_normalize(d);
  IntVector nd(n);
  for (int c = 0; c < n; ++c) nd[c] = -d[c];
  for (const auto& row : eq_rows)
    if (row == d || row == nd) return;

  size_t words = (ineq_rows.size() + 63) / 64;
  for (auto& r : rays) r.tight.resize(words, 0);

  size_t pivot = lin.size();
  for (size_t i = 0; i < lin.size(); ++i)
    if (dot(d, lin[i]) != 0) {
      pivot = i;
      break;
    }

  if (pivot < lin.size()) {
    split_lineality(d, pivot);
  } else {
    std::vector<Int> val(rays.size());
    std::vector<size_t> pos, neg;
    for (size_t i = 0; i < rays.size(); ++i) {
      val[i] = dot(d, rays[i].r);
      if (val[i] > 0) pos.push_back(i);
      if (val[i] < 0) neg.push_back(i);
    }
    std::vector<DDRay> next;
    for (size_t i = 0; i < rays.size(); ++i)
      if (val[i] == 0) next.push_back(rays[i]);
    for (size_t ip : pos)
      for (size_t in : neg) {
        if (!adjacent_pair(rays, ip, in)) continue;
        DDRay nr;
        nr.r.resize(n);
        for (int c = 0; c < n; ++c)
          nr.r[c] = val[ip] * rays[in].r[c] - val[in] * rays[ip].r[c];
        nr.r = gcd_normalize(nr.r);
        nr.tight.assign(words, 0);
        for (size_t k = 0; k < ineq_rows.size(); ++k)
          if (dot(ineq_rows[k], nr.r) == 0) nr.tight[k / 64] |= 1ull << (k % 64);
        next.push_back(std::move(nr));
      }
    rays = std::move(next);
  }
  eq_rows.push_back(std::move(d));
}

std::vector<IntVector> DDCone::one_dim_faces() const {
  if (lin.size() >= 2) return {};
  if (lin.size() == 1) {
    IntVector g = lin[0];
    IntVector h(n);
    for (int c = 0; c < n; ++c) h[c] = -g[c];
    std::vector<IntVector> out = {std::move(g), std::move(h)};
    std::sort(out.begin(), out.end());
    return out;
  }
  std::set<IntVector> uniq;
  for (const auto& r : rays) uniq.insert(r.r);
  return std::vector<IntVector>(uniq.begin(), uniq.end());
}

bool cone_contains(const DDCone& outer, const DDCone& inner) {
  for (const auto& l : inner.lin) {
    for (const auto& e : outer.eq_rows)
      if (dot(e, l) != 0) return false;
    for (const auto& w : outer.ineq_rows)
      if (dot(w, l) != 0) return false;
  }
  for (const auto& r : inner.rays) {
    for (const auto& e : outer.eq_rows)
      if (dot(e, r.r) != 0) return false;
    for (const auto& w : outer.ineq_rows)
      if (dot(w, r.r) < 0) return false;
  }
  return true;
}

std::vector<IntVector> extreme_rays_pointed(int q, const std::vector<IntVector>& rows) {
  if (q == 0) return {};
  if (rows.empty() || rank(IntMatrix::from_rows(rows)) < q)
    throw Error("cone rows do not have full rank");
  DDCone c = DDCone::full_space(q);
  for (const auto& w : rows) c.cut_halfspace(w);
  return c.one_dim_faces(); // full-rank rows leave no lineality
}

ConeOneDim cone_one_dim_faces(int n, const std::vector<IntVector>& eqs,
                              const std::vector<IntVector>& ineqs) {
  DDCone c = DDCone::full_space(n);
  for (const auto& e : eqs) c.cut_hyperplane(e);
  for (const auto& w : ineqs) c.cut_halfspace(w);
  ConeOneDim res;
  res.nonzero = !c.is_zero();
  res.lineality_dim = (int)c.lin.size();
  res.rays = c.one_dim_faces();
  return res;
}

} // namespace tropcert
