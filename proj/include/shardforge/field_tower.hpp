#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "shardforge/cartan.hpp"
#include "shardforge/linalg.hpp"

namespace shardforge {

// Prime field F_p with elements stored as canonical representatives in [0,p).
struct PrimeField {
  Int p = 2;
  using Elt = Int;

  Elt zero() const { return 0; }
  Elt one() const { return 1 % p; }
  Elt from_int(Int v) const {
    Int r = v % p;
    return r < 0 ? r + p : r;
  }
  Elt add(Elt a, Elt b) const { return (a + b) % p; }
  Elt sub(Elt a, Elt b) const { return (a - b + p) % p; }
  Elt mul(Elt a, Elt b) const { return (a * b) % p; }
  Elt neg(Elt a) const { return (p - a) % p; }
  Elt inv(Elt a) const {
    // Fermat: a^(p-2)
    Elt r = 1, base = a % p, e = p - 2;
    while (e > 0) {
      if (e & 1) r = (r * base) % p;
      base = (base * base) % p;
      e >>= 1;
    }
    return r;
  }
  bool is_zero(Elt a) const { return a == 0; }
  bool eq(Elt a, Elt b) const { return a == b; }

  bool finite() const { return true; }
  Int cardinality() const { return p; }
};

// Rational scalars; the degenerate tower (L = 1) over this field backs the
// symmetric, prime-free module backend.
struct RationalScalar : RationalField {
  Elt from_int(Int v) const { return BigRat(v); }
  bool finite() const { return false; }
  Int cardinality() const { return 0; }
};

// The cyclic extension tower kappa = kappa(1) < kappa(d) < kappa(L).
// Elements of every subfield live in one ambient kappa(L) = kappa[x]/(f) with
// f the lexicographically smallest monic irreducible of degree L; subfields
// are the fixed fields of Frobenius powers.
template <class SF>
class FieldTower {
 public:
  using Scalar = typename SF::Elt;
  using Elt = std::vector<Scalar>;  // length L, power-basis coordinates

  FieldTower(SF sf, int L) : sf_(sf), L_(L) {
    if (L_ < 1) throw ValidationError("field tower: degree must be positive");
    if (!sf_.finite() && L_ != 1)
      throw ValidationError("field tower: the rational backend only supports L = 1");
    if (L_ > 1) {
      find_modulus();
      build_reduction();
      build_frobenius();
    }
  }

  const SF& scalar_field() const { return sf_; }
  int degree() const { return L_; }
  const std::vector<Scalar>& modulus() const { return modulus_; }

  Elt zero() const { return Elt(size_t(L_), sf_.zero()); }
  Elt one() const {
    Elt e = zero();
    e[0] = sf_.one();
    return e;
  }
  Elt from_scalar(const Scalar& s) const {
    Elt e = zero();
    e[0] = s;
    return e;
  }
  Elt from_int(Int v) const { return from_scalar(sf_.from_int(v)); }

  bool is_zero(const Elt& a) const {
    for (const auto& x : a)
      if (!sf_.is_zero(x)) return false;
    return true;
  }
  bool eq(const Elt& a, const Elt& b) const {
    for (int i = 0; i < L_; ++i)
      if (!sf_.eq(a[size_t(i)], b[size_t(i)])) return false;
    return true;
  }
  Elt add(const Elt& a, const Elt& b) const {
    Elt r = a;
    for (int i = 0; i < L_; ++i) r[size_t(i)] = sf_.add(r[size_t(i)], b[size_t(i)]);
    return r;
  }
  Elt sub(const Elt& a, const Elt& b) const {
    Elt r = a;
    for (int i = 0; i < L_; ++i) r[size_t(i)] = sf_.sub(r[size_t(i)], b[size_t(i)]);
    return r;
  }
  Elt neg(const Elt& a) const {
    Elt r = a;
    for (auto& x : r) x = sf_.neg(x);
    return r;
  }
  Elt mul(const Elt& a, const Elt& b) const {
    if (L_ == 1) return {sf_.mul(a[0], b[0])};
    std::vector<Scalar> conv(size_t(2 * L_ - 1), sf_.zero());
    for (int i = 0; i < L_; ++i) {
      if (sf_.is_zero(a[size_t(i)])) continue;
      for (int j = 0; j < L_; ++j)
        conv[size_t(i + j)] = sf_.add(conv[size_t(i + j)], sf_.mul(a[size_t(i)], b[size_t(j)]));
    }
    Elt r(conv.begin(), conv.begin() + L_);
    for (int k = L_; k < 2 * L_ - 1; ++k) {
      if (sf_.is_zero(conv[size_t(k)])) continue;
      const auto& red = reduction_[size_t(k - L_)];
      for (int j = 0; j < L_; ++j)
        r[size_t(j)] = sf_.add(r[size_t(j)], sf_.mul(conv[size_t(k)], red[size_t(j)]));
    }
    return r;
  }
  // Multiplicative inverse, by solving (mult-by-a) y = 1.
  Elt inv(const Elt& a) const {
    if (is_zero(a)) throw PreconditionError("field tower: inverse of zero");
    if (L_ == 1) return {sf_.inv(a[0])};
    Mat<SF> M(sf_, L_, L_), B(sf_, L_, 1);
    for (int j = 0; j < L_; ++j) {
      Elt xj = zero();
      xj[size_t(j)] = sf_.one();
      Elt col = mul(a, xj);
      for (int i = 0; i < L_; ++i) M.at(i, j) = col[size_t(i)];
    }
    B.at(0, 0) = sf_.one();
    auto X = mat_solve(sf_, M, B);
    if (!X) throw PreconditionError("field tower: element is not invertible");
    Elt r = zero();
    for (int i = 0; i < L_; ++i) r[size_t(i)] = X->at(i, 0);
    return r;
  }

  // x |-> x^p (identity when L = 1, where every element is already in kappa).
  Elt frobenius(const Elt& a) const {
    if (L_ == 1) return a;
    Elt r = zero();
    for (int j = 0; j < L_; ++j) {
      if (sf_.is_zero(a[size_t(j)])) continue;
      for (int i = 0; i < L_; ++i)
        r[size_t(i)] = sf_.add(r[size_t(i)], sf_.mul(a[size_t(j)], frob_.at(i, j)));
    }
    return r;
  }
  Elt frob_pow(int times, Elt a) const {
    for (int k = 0; k < times; ++k) a = frobenius(a);
    return a;
  }

  bool in_subfield(int d, const Elt& a) const {
    if (d < 1 || L_ % d != 0)
      throw ValidationError("field tower: " + std::to_string(d) + " does not divide L");
    return eq(frob_pow(d, a), a);
  }

  // kappa-basis of kappa(d): kernel of Frobenius^d - I, in echelon order.
  std::vector<Elt> subfield_basis(int d) const {
    if (L_ % d != 0) throw ValidationError("field tower: subfield degree must divide L");
    auto it = subfield_bases_.find(d);
    if (it != subfield_bases_.end()) return it->second;
    std::vector<Elt> basis;
    if (L_ == 1) {
      basis.push_back(one());
    } else {
      Mat<SF> M(sf_, L_, L_);
      for (int j = 0; j < L_; ++j) {
        Elt xj = zero();
        xj[size_t(j)] = sf_.one();
        Elt img = frob_pow(d, xj);
        for (int i = 0; i < L_; ++i) M.at(i, j) = img[size_t(i)];
        M.at(j, j) = sf_.sub(M.at(j, j), sf_.one());
      }
      Mat<SF> K = kernel_basis(sf_, M);
      if (K.cols != d)
        throw ValidationError("field tower: fixed field of Frobenius^" + std::to_string(d) +
                              " has wrong dimension");
      for (int c = 0; c < K.cols; ++c) {
        Elt e = zero();
        for (int i = 0; i < L_; ++i) e[size_t(i)] = K.at(i, c);
        basis.push_back(std::move(e));
      }
    }
    subfield_bases_[d] = basis;
    return basis;
  }

  // tr_{kappa(d)} : kappa(e) -> kappa(d), x |-> sum of Frobenius^(d m) x.
  Elt trace(int to_d, int from_e, const Elt& x) const {
    if (from_e % to_d != 0 || L_ % from_e != 0)
      throw ValidationError("field tower: trace needs d | e | L, got d=" + std::to_string(to_d) +
                            " e=" + std::to_string(from_e));
    if (!in_subfield(from_e, x))
      throw PreconditionError("field tower: trace input is not in kappa(" +
                              std::to_string(from_e) + ")");
    Elt acc = x;
    Elt cur = x;
    for (int m = 1; m < from_e / to_d; ++m) {
      cur = frob_pow(to_d, cur);
      acc = add(acc, cur);
    }
    return acc;
  }

  // Trace-dual basis of a kappa(d)-basis of kappa(e); checks
  // tr(b_s^* b_t) = delta_st.  Throws "not a basis" on a singular Gram matrix.
  std::vector<Elt> dual_basis(int d, int e, const std::vector<Elt>& basis) const {
    const int m = int(basis.size());
    if (m != e / d || e % d != 0 || L_ % e != 0)
      throw ValidationError("field tower: dual_basis degree mismatch");
    TowerView F{this};
    Mat<TowerView> G(F, m, m);
    for (int s = 0; s < m; ++s)
      for (int t = 0; t < m; ++t) G.at(s, t) = trace(d, e, mul(basis[size_t(s)], basis[size_t(t)]));
    auto X = mat_solve(F, G, mat_identity(F, m));
    if (!X) throw ValidationError("field tower: not a basis (singular trace Gram matrix)");
    std::vector<Elt> dual;
    for (int s = 0; s < m; ++s) {
      Elt acc = zero();
      for (int t = 0; t < m; ++t) acc = add(acc, mul(X->at(t, s), basis[size_t(t)]));
      dual.push_back(std::move(acc));
    }
    return dual;
  }

  // Coordinates of x in kappa(d) over a kappa-basis with precomputed
  // kappa-trace duals: coord_c = tr_kappa(x * dual_c).
  std::vector<Scalar> subfield_coords(int d, const Elt& x) const {
    ensure_coord_duals(d);
    const auto& duals = coord_duals_.at(d);
    std::vector<Scalar> out;
    for (const Elt& du : duals) out.push_back(trace(1, d, mul(x, du))[0]);
    return out;
  }

  // Enumerate all elements of kappa(d) in coefficient-counting order
  // (finite backend only).
  template <class Fn>
  void enumerate_subfield(int d, Fn&& fn) const {
    if (!sf_.finite())
      throw OracleRangeError("field tower: cannot enumerate an infinite field");
    auto basis = subfield_basis(d);
    Int p = sf_.cardinality();
    std::vector<Int> digits(basis.size(), 0);
    while (true) {
      Elt e = zero();
      for (size_t k = 0; k < basis.size(); ++k) {
        if (digits[k] == 0) continue;
        Elt term = basis[k];
        for (auto& coeff : term) coeff = sf_.mul(coeff, sf_.from_int(digits[k]));
        e = add(e, term);
      }
      fn(e);
      size_t pos = 0;
      while (pos < digits.size() && ++digits[pos] == p) digits[pos++] = 0;
      if (pos == digits.size()) break;
    }
  }

  // Smallest enumerated element generating kappa(d) over kappa(g).
  Elt generator_over(int d, int g) const {
    if (d % g != 0 || L_ % d != 0) throw ValidationError("field tower: generator degree mismatch");
    if (d == g) return one();
    std::vector<int> maximal;
    int quotient = d / g;
    for (int q = 2; q <= quotient; ++q)
      if (quotient % q == 0 && is_prime_ll(q)) maximal.push_back(d / q);
    Elt found = zero();
    bool ok = false;
    enumerate_subfield(d, [&](const Elt& e) {
      if (ok) return;
      for (int m : maximal)
        if (in_subfield(m, e)) return;
      found = e;
      ok = true;
    });
    if (!ok) throw ValidationError("field tower: no generator found");
    return found;
  }

  // Field object over tower elements, for generic linear algebra.
  struct TowerView {
    const FieldTower* t;
    using Elt = FieldTower::Elt;
    Elt zero() const { return t->zero(); }
    Elt one() const { return t->one(); }
    Elt add(const Elt& a, const Elt& b) const { return t->add(a, b); }
    Elt sub(const Elt& a, const Elt& b) const { return t->sub(a, b); }
    Elt mul(const Elt& a, const Elt& b) const { return t->mul(a, b); }
    Elt neg(const Elt& a) const { return t->neg(a); }
    Elt inv(const Elt& a) const { return t->inv(a); }
    bool is_zero(const Elt& a) const { return t->is_zero(a); }
    bool eq(const Elt& a, const Elt& b) const { return t->eq(a, b); }
  };
  TowerView view() const { return TowerView{this}; }

 private:
  Elt mul_in_L(const Elt& a, const Elt& b) const { return mul(a, b); }

  void ensure_coord_duals(int d) const {
    if (coord_duals_.count(d)) return;
    coord_duals_[d] = dual_basis(1, d, subfield_basis(d));
  }

  // Monic irreducible of degree L with the smallest coefficient tuple
  // (c_{L-1}, ..., c_0) in base-p counting order.
  void find_modulus() {
    Int p = sf_.cardinality();
    std::vector<Int> c(size_t(L_), 0);
    while (true) {
      std::vector<Scalar> f(size_t(L_ + 1));
      for (int i = 0; i < L_; ++i) f[size_t(i)] = sf_.from_int(c[size_t(i)]);
      f[size_t(L_)] = sf_.one();
      if (poly_irreducible(f)) {
        modulus_.assign(f.begin(), f.end() - 1);  // store c_0..c_{L-1}
        return;
      }
      size_t pos = 0;
      while (pos < c.size() && ++c[pos] == p) c[pos++] = 0;
      if (pos == c.size()) throw ValidationError("field tower: no irreducible polynomial found");
    }
  }

  // Trial division by every monic polynomial of degree 1..L/2.
  bool poly_irreducible(const std::vector<Scalar>& f) const {
    Int p = sf_.cardinality();
    for (int deg = 1; 2 * deg <= L_; ++deg) {
      std::vector<Int> c(size_t(deg), 0);
      while (true) {
        std::vector<Scalar> g(size_t(deg + 1));
        for (int i = 0; i < deg; ++i) g[size_t(i)] = sf_.from_int(c[size_t(i)]);
        g[size_t(deg)] = sf_.one();
        if (poly_divides(g, f)) return false;
        size_t pos = 0;
        while (pos < c.size() && ++c[pos] == p) c[pos++] = 0;
        if (pos == c.size()) break;
      }
    }
    return true;
  }

  bool poly_divides(const std::vector<Scalar>& g, std::vector<Scalar> f) const {
    int dg = int(g.size()) - 1;
    for (int k = int(f.size()) - 1; k >= dg; --k) {
      Scalar lead = f[size_t(k)];
      if (sf_.is_zero(lead)) continue;
      for (int j = 0; j <= dg; ++j)
        f[size_t(k - dg + j)] = sf_.sub(f[size_t(k - dg + j)], sf_.mul(lead, g[size_t(j)]));
    }
    for (const auto& x : f)
      if (!sf_.is_zero(x)) return false;
    return true;
  }

  void build_reduction() {
    // reduction_[k] = coordinates of x^{L+k} mod f, k = 0..L-2.
    reduction_.clear();
    std::vector<Scalar> cur(size_t(L_), sf_.zero());
    for (int j = 0; j < L_; ++j) cur[size_t(j)] = sf_.neg(modulus_[size_t(j)]);  // x^L
    reduction_.push_back(cur);
    for (int k = 1; k < L_ - 1; ++k) {
      std::vector<Scalar> nxt(size_t(L_), sf_.zero());
      // multiply cur by x
      Scalar top = cur[size_t(L_ - 1)];
      for (int j = L_ - 1; j > 0; --j) nxt[size_t(j)] = cur[size_t(j - 1)];
      nxt[0] = sf_.zero();
      if (!sf_.is_zero(top))
        for (int j = 0; j < L_; ++j)
          nxt[size_t(j)] = sf_.add(nxt[size_t(j)], sf_.mul(top, reduction_[0][size_t(j)]));
      reduction_.push_back(nxt);
      cur = nxt;
    }
  }

  void build_frobenius() {
    Int p = sf_.cardinality();
    frob_ = Mat<SF>(sf_, L_, L_);
    // column j = (x^j)^p = x^(j p) mod f
    Elt x = zero();
    if (L_ > 1)
      x[1] = sf_.one();
    else
      x[0] = sf_.one();
    for (int j = 0; j < L_; ++j) {
      Elt xj = one();
      // x^(j p) by repeated multiplication
      for (Int k = 0; k < Int(j) * p; ++k) xj = mul(xj, x);
      for (int i = 0; i < L_; ++i) frob_.at(i, j) = xj[size_t(i)];
    }
  }

  SF sf_;
  int L_;
  std::vector<Scalar> modulus_;               // c_0..c_{L-1} of monic f
  std::vector<std::vector<Scalar>> reduction_;  // x^{L+k} mod f
  Mat<SF> frob_;
  mutable std::map<int, std::vector<Elt>> subfield_bases_;
  mutable std::map<int, std::vector<Elt>> coord_duals_;
};

// The chosen kappa(d_j)-basis b^{ji} of kappa(d_ij) lying inside kappa(d_i):
// powers of a generator of kappa(d_i) over kappa(gcd(d_i, d_j)).
template <class SF>
std::vector<typename FieldTower<SF>::Elt> species_basis(const FieldTower<SF>& t,
                                                        const CartanData& c, int i, int j) {
  if (i == j) throw PreconditionError("species_basis: vertices must differ");
  int di = int(c.d[size_t(i)]), dj = int(c.d[size_t(j)]);
  int g = std::gcd(di, dj);
  int count = int(c.d_ij(i, j)) / dj;  // = d_i / g
  std::vector<typename FieldTower<SF>::Elt> out;
  auto u = t.generator_over(di, g);
  auto cur = t.one();
  for (int k = 0; k < count; ++k) {
    out.push_back(cur);
    cur = t.mul(cur, u);
  }
  // Linear disjointness: the products b_k * w_c over a kappa-basis w of
  // kappa(d_j) must be kappa-independent.
  const int dij = int(c.d_ij(i, j));
  auto wbasis = t.subfield_basis(dj);
  const auto& sf = t.scalar_field();
  Mat<SF> M(sf, t.degree(), count * dj);
  int col = 0;
  for (const auto& b : out)
    for (const auto& w : wbasis) {
      auto prod = t.mul(b, w);
      for (int r = 0; r < t.degree(); ++r) M.at(r, col) = prod[size_t(r)];
      ++col;
    }
  if (mat_rank(sf, M) != dij)
    throw ValidationError("species_basis: chosen powers are not independent over kappa(d_j)");
  return out;
}

}  // namespace shardforge
