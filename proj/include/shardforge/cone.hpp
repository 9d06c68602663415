#pragma once

#include <algorithm>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <vector>

#include "shardforge/cartan.hpp"
#include "shardforge/linalg.hpp"

namespace shardforge {

// Canonical generator description: lineality rows in integer-scaled reduced
// echelon form, extreme rays primitive and reduced modulo the lineality, both
// sorted.  Two cones are equal iff their VReps are equal.
struct VRep {
  std::vector<BigVec> lineality;
  std::vector<BigVec> rays;
  int dim = 0;
};

namespace dd {

struct GenRay {
  BigVec v;
  std::vector<char> zero;  // incidence with the inequality constraints so far
};

inline bool adjacent(const std::vector<GenRay>& rays, size_t a, size_t b) {
  const auto& za = rays[a].zero;
  const auto& zb = rays[b].zero;
  for (size_t r = 0; r < rays.size(); ++r) {
    if (r == a || r == b) continue;
    bool superset = true;
    for (size_t k = 0; k < za.size() && superset; ++k)
      if (za[k] && zb[k] && !rays[r].zero[k]) superset = false;
    if (superset) return false;
  }
  return true;
}

struct State {
  int n;
  int processed = 0;  // inequality constraints handled so far
  std::vector<BigVec> lin;
  std::vector<GenRay> rays;

  explicit State(int n_) : n(n_) {
    for (int i = 0; i < n; ++i) {
      BigVec e(size_t(n), 0);
      e[size_t(i)] = 1;
      lin.push_back(std::move(e));
    }
  }

  // Intersect with the half-space <x, nu> >= 0.
  void add_inequality(const BigVec& nu) {
    int pivot = -1;
    for (size_t i = 0; i < lin.size(); ++i)
      if (dot(lin[i], nu) != 0) {
        pivot = int(i);
        break;
      }
    if (pivot >= 0) {
      // The lineality crosses the hyperplane: project everything onto it
      // along the crossing line, which survives as a ray.
      BigVec l0 = lin[size_t(pivot)];
      if (dot(l0, nu) < 0) l0 = negate(l0);
      const BigInt dl0 = dot(l0, nu);
      lin.erase(lin.begin() + pivot);
      for (auto& l : lin) {
        BigInt dl = dot(l, nu);
        if (dl != 0) {
          l = combine(dl0, l, -dl, l0);
          make_primitive_signless(l);
        }
      }
      for (auto& r : rays) {
        BigInt dr = dot(r.v, nu);
        if (dr != 0) {
          r.v = combine(dl0, r.v, -dr, l0);
          make_primitive(r.v);
        }
        r.zero.push_back(1);
      }
      GenRay g;
      g.v = std::move(l0);
      make_primitive(g.v);
      g.zero.assign(size_t(processed), 1);  // lineality was incident to all earlier constraints
      g.zero.push_back(0);
      rays.push_back(std::move(g));
      ++processed;
      return;
    }

    std::vector<BigInt> val(rays.size());
    for (size_t i = 0; i < rays.size(); ++i) val[i] = dot(rays[i].v, nu);
    std::vector<GenRay> next;
    for (size_t i = 0; i < rays.size(); ++i) {
      if (val[i] < 0) continue;
      GenRay g = rays[i];
      g.zero.push_back(val[i] == 0 ? 1 : 0);
      next.push_back(std::move(g));
    }
    for (size_t p = 0; p < rays.size(); ++p) {
      if (val[p] <= 0) continue;
      for (size_t m = 0; m < rays.size(); ++m) {
        if (val[m] >= 0) continue;
        if (!adjacent(rays, p, m)) continue;
        GenRay g;
        g.v = combine(val[p], rays[m].v, -val[m], rays[p].v);
        if (is_zero_vec(g.v)) continue;
        make_primitive(g.v);
        g.zero.resize(rays[p].zero.size());
        for (size_t k = 0; k < g.zero.size(); ++k)
          g.zero[k] = rays[p].zero[k] && rays[m].zero[k];
        g.zero.push_back(1);
        next.push_back(std::move(g));
      }
    }
    rays = std::move(next);
    ++processed;
  }
};

}  // namespace dd

// Runs the double description method over exact rationals.  Equalities are
// processed first (as opposite half-space pairs), then the inequalities.
inline std::pair<std::vector<BigVec>, std::vector<BigVec>> double_description(
    int n, const std::vector<BigVec>& eqs, const std::vector<BigVec>& ineqs) {
  dd::State st(n);
  for (const auto& e : eqs) {
    if (is_zero_vec(e)) continue;
    st.add_inequality(e);
    st.add_inequality(negate(e));
  }
  for (const auto& q : ineqs) {
    if (is_zero_vec(q)) continue;
    st.add_inequality(q);
  }
  std::vector<BigVec> rays;
  for (auto& r : st.rays) rays.push_back(std::move(r.v));
  return {std::move(st.lin), std::move(rays)};
}

inline VRep canonicalize_generators(int n, const std::vector<BigVec>& lin_in,
                                    const std::vector<BigVec>& rays_in) {
  VRep v;
  v.lineality = canonical_subspace_basis(lin_in, n);
  // Pivot column of each canonical lineality row (first nonzero, positive).
  std::vector<int> piv;
  for (const auto& row : v.lineality)
    for (int j = 0; j < n; ++j)
      if (row[size_t(j)] != 0) {
        piv.push_back(j);
        break;
      }
  std::set<BigVec> rays;
  for (BigVec r : rays_in) {
    for (size_t k = 0; k < v.lineality.size(); ++k) {
      const BigVec& row = v.lineality[k];
      const BigInt& rp = r[size_t(piv[k])];
      if (rp != 0) r = combine(row[size_t(piv[k])], r, -rp, row);
    }
    if (is_zero_vec(r)) continue;
    make_primitive(r);
    rays.insert(std::move(r));
  }
  v.rays.assign(rays.begin(), rays.end());
  std::vector<BigVec> all = v.rays;
  v.dim = int(v.lineality.size()) + rank_of_rows(all, n);
  return v;
}

// Exact rational polyhedral cone in weight space.  Constraint normals live in
// root space; <x, nu> is the coordinate dot product.  Immutable; the
// generator description is computed once on demand and shared by copies.
class Cone {
 public:
  Cone() = default;
  Cone(int n, std::vector<BigVec> eqs, std::vector<BigVec> ineqs)
      : n_(n), eqs_(std::move(eqs)), ineqs_(std::move(ineqs)),
        cache_(std::make_shared<Cache>()) {}

  static Cone full_space(int n) { return Cone(n, {}, {}); }

  int rank() const { return n_; }
  const std::vector<BigVec>& equalities_in() const { return eqs_; }
  const std::vector<BigVec>& inequalities_in() const { return ineqs_; }

  const VRep& vrep() const& {
    std::call_once(cache_->flag, [this] {
      auto [lin, rays] = double_description(n_, eqs_, ineqs_);
      cache_->v = canonicalize_generators(n_, lin, rays);
    });
    return cache_->v;
  }

  // Value overload so calling on a temporary cannot dangle.
  VRep vrep() && {
    const Cone& self = *this;
    return self.vrep();
  }

  int dimension() const { return vrep().dim; }

  bool is_zero_cone() const { return dimension() == 0; }

  std::string canonical_key() const {
    const VRep& v = vrep();
    std::string s = "L";
    for (const auto& l : v.lineality) s += "|" + vec_to_string(l);
    s += ";R";
    for (const auto& r : v.rays) s += "|" + vec_to_string(r);
    return s;
  }

  bool equals(const Cone& o) const {
    const VRep& a = vrep();
    const VRep& b = o.vrep();
    return a.lineality == b.lineality && a.rays == b.rays;
  }

  Cone intersected(const std::vector<BigVec>& extra_eqs,
                   const std::vector<BigVec>& extra_ineqs) const {
    auto eqs = eqs_;
    auto ineqs = ineqs_;
    eqs.insert(eqs.end(), extra_eqs.begin(), extra_eqs.end());
    ineqs.insert(ineqs.end(), extra_ineqs.begin(), extra_ineqs.end());
    return Cone(n_, std::move(eqs), std::move(ineqs));
  }

  // Image under s_i: transform constraint normals by the root-space action.
  Cone reflected(const CartanData& c, int i) const {
    std::vector<BigVec> eqs, ineqs;
    for (const auto& e : eqs_) eqs.push_back(reflect_normal_int(c, i, e));
    for (const auto& q : ineqs_) ineqs.push_back(reflect_normal_int(c, i, q));
    return Cone(n_, std::move(eqs), std::move(ineqs));
  }

  // Minimal canonical half-space description, via the polar cone.
  std::pair<std::vector<BigVec>, std::vector<BigVec>> facet_enumeration() const {
    const VRep& v = vrep();
    auto [lin, rays] = double_description(n_, v.lineality, v.rays);
    VRep polar = canonicalize_generators(n_, lin, rays);
    return {polar.lineality, polar.rays};
  }

  bool contains_point(const BigVec& x) const {
    for (const auto& e : eqs_)
      if (dot(x, e) != 0) return false;
    for (const auto& q : ineqs_)
      if (dot(x, q) < 0) return false;
    return true;
  }

  bool contains_cone(const Cone& inner) const {
    const VRep& v = inner.vrep();
    for (const auto& l : v.lineality) {
      for (const auto& e : eqs_)
        if (dot(l, e) != 0) return false;
      for (const auto& q : ineqs_)
        if (dot(l, q) != 0) return false;
    }
    for (const auto& r : v.rays)
      if (!contains_point(r)) return false;
    return true;
  }

 private:
  struct Cache {
    std::once_flag flag;
    VRep v;
  };

  int n_ = 0;
  std::vector<BigVec> eqs_, ineqs_;
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

// beta^perp = {x : <x, beta> = 0}.
inline Cone hyperplane(const Root& beta) {
  if (is_zero_vec(beta.coords)) throw ValidationError("hyperplane: zero normal vector");
  return Cone(beta.rank(), {to_big(beta.coords)}, {});
}

inline Cone cone_from_generators(int n, const std::vector<BigVec>& lineality,
                                 const std::vector<BigVec>& rays) {
  auto [lin, facet_rays] = double_description(n, lineality, rays);
  VRep polar = canonicalize_generators(n, lin, facet_rays);
  return Cone(n, polar.lineality, polar.rays);
}

// sigma_i^+ (sign=+1) intersects with <x, alpha_i> >= 0 and reflects by s_i;
// sigma_i^- uses the opposite half-space.
inline Cone sigma(const CartanData& c, int i, int sign, const Cone& K) {
  BigVec nu(size_t(c.n), 0);
  nu[size_t(i)] = sign >= 0 ? 1 : -1;
  return K.intersected({}, {nu}).reflected(c, i);
}

inline int dimension(const Cone& K) { return K.dimension(); }
inline bool equal(const Cone& a, const Cone& b) { return a.equals(b); }

}  // namespace shardforge
