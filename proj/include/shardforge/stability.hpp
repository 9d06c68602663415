#pragma once

#include <cmath>
#include <type_traits>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "shardforge/cone.hpp"
#include "shardforge/reflection_functors.hpp"
#include "shardforge/shard_enum.hpp"

namespace shardforge {

// --- kappa-linear flattening of a module, for the brute-force oracle -------

// A module over the finite backend as plain F_p data: per-vertex kappa
// dimensions and a list of kappa-linear generator maps (source, target,
// matrix).  The generators are the kappa(d_i)-scalar actions and the edge
// actions over a kappa-basis of each kappa(d_ij).
template <class SF>
struct FlatModule {
  std::vector<int> kdim;
  std::vector<std::tuple<int, int, Mat<SF>>> gens;
};

template <class SF>
FlatModule<SF> flatten_module(const SpeciesContext<SF>& ctx, const SpeciesModule<SF>& M) {
  const auto& t = ctx.tower;
  const auto& sf = t.scalar_field();
  FlatModule<SF> F;
  for (int i = 0; i < ctx.c.n; ++i) F.kdim.push_back(int(ctx.c.d[size_t(i)]) * M.m(i));

  // kappa(d_i)-scalar action by a generator of the subfield.
  for (int i = 0; i < ctx.c.n; ++i) {
    int d = int(ctx.c.d[size_t(i)]);
    if (d == 1 || M.m(i) == 0) continue;
    auto basis = t.subfield_basis(d);
    auto gen = t.generator_over(d, 1);
    Mat<SF> A(sf, F.kdim[size_t(i)], F.kdim[size_t(i)]);
    for (int s = 0; s < M.m(i); ++s)
      for (int cb = 0; cb < d; ++cb) {
        auto coords = t.subfield_coords(d, t.mul(gen, basis[size_t(cb)]));
        for (int rb = 0; rb < d; ++rb) A.at(s * d + rb, s * d + cb) = coords[size_t(rb)];
      }
    F.gens.push_back({i, i, std::move(A)});
  }

  // Edge actions: arrow r with coefficient y over a kappa-basis of kappa(d_ij).
  for (int j = 0; j < ctx.c.n; ++j)
    for (int i = 0; i < ctx.c.n; ++i) {
      if (!ctx.c.edge(j, i) || M.m(i) == 0 || M.m(j) == 0) continue;
      const auto& pd = ctx.pair(j, i);
      int di = int(ctx.c.d[size_t(i)]);
      int dj = int(ctx.c.d[size_t(j)]);
      int dij = int(ctx.c.d_ij(i, j));
      auto ibasis = t.subfield_basis(di);
      auto ijbasis = t.subfield_basis(dij);
      const auto& mat = M.maps.at({j, i});
      for (int r = 0; r < pd.q; ++r)
        for (const auto& y : ijbasis) {
          Mat<SF> A(sf, F.kdim[size_t(j)], F.kdim[size_t(i)]);
          for (int s = 0; s < M.m(i); ++s)
            for (int cb = 0; cb < di; ++cb) {
              auto z = ctx.expand_over(j, i, t.mul(y, ibasis[size_t(cb)]));
              // image = sum_k z_k * column (r, k, s) of the edge matrix
              for (int v = 0; v < M.m(j); ++v) {
                auto acc = t.zero();
                for (int k = 0; k < pd.pcount; ++k)
                  acc = t.add(acc,
                              t.mul(z[size_t(k)],
                                    mat.at(v, SpeciesContext<SF>::col_index(pd.pcount, M.m(i), r,
                                                                            k, s))));
                auto coords = t.subfield_coords(dj, acc);
                for (int rb = 0; rb < dj; ++rb)
                  A.at(v * dj + rb, s * di + cb) = coords[size_t(rb)];
              }
            }
          F.gens.push_back({i, j, std::move(A)});
        }
    }
  return F;
}

namespace stab_detail {

// Row-echelon container over F_p for incremental span building.
struct Echelon {
  Int p = 3;
  std::vector<std::vector<Int>> rows;  // reduced, sorted by pivot

  // Reduces v against the rows; if independent, inserts and returns true.
  bool insert(std::vector<Int> v) {
    for (const auto& row : rows) {
      int piv = pivot_of(row);
      if (piv < 0) continue;
      Int c = v[size_t(piv)] % p;
      if (c != 0) {
        for (size_t k = 0; k < v.size(); ++k) v[k] = ((v[k] - c * row[k]) % p + p) % p;
      }
    }
    int piv = pivot_of(v);
    if (piv < 0) return false;
    // normalize leading 1
    Int inv = 1, lead = v[size_t(piv)], e = p - 2;
    while (e > 0) {
      if (e & 1) inv = inv * lead % p;
      lead = lead * lead % p;
      e >>= 1;
    }
    for (auto& x : v) x = x * inv % p;
    // back-substitute into existing rows
    for (auto& row : rows) {
      Int c = row[size_t(piv)] % p;
      if (c != 0)
        for (size_t k = 0; k < v.size(); ++k) row[k] = ((row[k] - c * v[k]) % p + p) % p;
    }
    rows.push_back(std::move(v));
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
      return pivot_of(a) < pivot_of(b);
    });
    return true;
  }

  static int pivot_of(const std::vector<Int>& v) {
    for (size_t k = 0; k < v.size(); ++k)
      if (v[k] != 0) return int(k);
    return -1;
  }

  std::string key() const {
    std::string s;
    for (const auto& r : rows) s += vec_to_string(r) + ";";
    return s;
  }
};

// Per-vertex subspaces, with closure under the flat generator maps.
template <class SF>
struct SubTuple {
  std::vector<Echelon> spaces;

  static SubTuple make(const FlatModule<SF>& F, Int p) {
    SubTuple s;
    for (int d : F.kdim) {
      Echelon e;
      e.p = p;
      (void)d;
      s.spaces.push_back(e);
    }
    return s;
  }

  std::string key() const {
    std::string s;
    for (const auto& sp : spaces) s += sp.key() + "|";
    return s;
  }
};

template <class SF>
void close_under_action(const FlatModule<SF>& F, Int p, SubTuple<SF>& s,
                        std::vector<std::pair<int, std::vector<Int>>> work) {
  while (!work.empty()) {
    auto [vtx, vec] = work.back();
    work.pop_back();
    if (!s.spaces[size_t(vtx)].insert(vec)) continue;
    for (const auto& [src, tgt, A] : F.gens) {
      if (src != vtx) continue;
      std::vector<Int> img(size_t(A.rows), 0);
      for (int r = 0; r < A.rows; ++r) {
        Int acc = 0;
        for (int c = 0; c < A.cols; ++c) acc += A.at(r, c) * vec[size_t(c)] % p;
        img[size_t(r)] = ((acc % p) + p) % p;
      }
      work.push_back({tgt, std::move(img)});
    }
  }
}

}  // namespace stab_detail

// Dimension vectors of all submodules, by closing each vector into its cyclic
// submodule and then closing the set of submodules under sums.  Only for the
// finite backend within the cardinality bound.
template <class SF>
std::set<IntVec> submodule_dim_vectors(const SpeciesContext<SF>& ctx, const SpeciesModule<SF>& M,
                                       Int max_card = Int(1) << 16) {
  if constexpr (!std::is_same_v<SF, PrimeField>) {
    (void)ctx;
    (void)M;
    (void)max_card;
    throw OracleRangeError("submodule oracle out of range: infinite ground field");
  } else {
  const auto& sf = ctx.tower.scalar_field();
  FlatModule<SF> F = flatten_module(ctx, M);
  int T = 0;
  for (int d : F.kdim) T += d;
  const Int p = sf.cardinality();
  double bits = double(T) * std::log2(double(p));
  if (bits > std::log2(double(max_card)))
    throw OracleRangeError("submodule oracle out of range: p^" + std::to_string(T) +
                           " exceeds the bound");

  using Tuple = stab_detail::SubTuple<SF>;
  std::map<std::string, Tuple> submodules;
  auto note = [&](const Tuple& t) {
    auto key = t.key();
    if (submodules.count(key)) return false;
    submodules.emplace(key, t);
    return true;
  };
  note(Tuple::make(F, p));  // zero submodule

  // Cyclic submodules.
  Int total = 1;
  for (int k = 0; k < T; ++k) total *= p;
  for (Int idx = 1; idx < total; ++idx) {
    Int rem = idx;
    std::vector<std::pair<int, std::vector<Int>>> seeds;
    int off = 0;
    for (int i = 0; i < ctx.c.n; ++i) {
      std::vector<Int> comp(size_t(F.kdim[size_t(i)]), 0);
      bool nonzero = false;
      for (int k = 0; k < F.kdim[size_t(i)]; ++k) {
        comp[size_t(k)] = rem % p;
        rem /= p;
        if (comp[size_t(k)] != 0) nonzero = true;
      }
      if (nonzero) seeds.push_back({i, std::move(comp)});
      off += F.kdim[size_t(i)];
    }
    // the cyclic submodule generated by the vector: close each component
    Tuple t = Tuple::make(F, p);
    stab_detail::close_under_action(F, p, t, seeds);
    note(t);
  }

  // Close under sums.
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Tuple> cur;
    for (auto& [k, v] : submodules) cur.push_back(v);
    for (size_t a = 0; a < cur.size() && !changed; ++a)
      for (size_t b = a + 1; b < cur.size() && !changed; ++b) {
        Tuple sum = cur[a];
        std::vector<std::pair<int, std::vector<Int>>> extra;
        for (size_t i = 0; i < cur[b].spaces.size(); ++i)
          for (const auto& row : cur[b].spaces[i].rows) extra.push_back({int(i), row});
        stab_detail::close_under_action(F, p, sum, extra);
        if (note(sum)) changed = true;
      }
  }

  std::set<IntVec> dims;
  for (const auto& [k, t] : submodules) {
    IntVec dv;
    for (int i = 0; i < ctx.c.n; ++i) {
      int kd = int(t.spaces[size_t(i)].rows.size());
      int d = int(ctx.c.d[size_t(i)]);
      if (kd % d != 0)
        throw std::logic_error("submodule oracle: component is not a kappa(d_i)-subspace");
      dv.push_back(kd / d);
    }
    dims.insert(dv);
  }
  return dims;
  }
}

// Brute-force stability domain: all theta orthogonal to dim M and pairing
// nonnegatively with every submodule dimension vector.
template <class SF>
Cone stab_oracle(const SpeciesContext<SF>& ctx, const SpeciesModule<SF>& M,
                 Int max_card = Int(1) << 16) {
  auto dims = submodule_dim_vectors(ctx, M, max_card);
  std::vector<BigVec> ineqs;
  for (const auto& dv : dims)
    if (!is_zero_vec(dv)) ineqs.push_back(to_big(dv));
  BigVec eq = to_big(dim_vector(M).coords);
  std::vector<BigVec> eqs;
  if (!is_zero_vec(eq)) eqs.push_back(eq);
  return Cone(ctx.c.n, eqs, ineqs);
}

// The sigma-product cone of a signed word (no module bookkeeping).
inline Cone stab_cone_of_word(const CartanData& c, const SignedWord& w) {
  Cone K = hyperplane(simple_root(c.n, w.seed));
  for (auto [v, s] : w.steps) K = sigma(c, v, s, K);
  return K;
}

// Stability domain along the recursion.  Checks that the unsigned word is a
// positive expression and that the signed module product is defined.
template <class SF>
Cone stab_recursive(const SpeciesContext<SF>& ctx, const SignedWord& w) {
  Root r = simple_root(ctx.c.n, w.seed);
  for (auto [v, s] : w.steps) {
    if (coroot_pairing(ctx.c, v, r) >= 0)
      throw PreconditionError("stab_recursive: unsigned word is not a positive expression at s_" +
                              std::to_string(v + 1));
    r = reflect_root(ctx.c, v, r);
  }
  (void)apply_signed_word(ctx, w);  // throws if some step is undefined
  return stab_cone_of_word(ctx.c, w);
}

template <class SF>
struct StabResult {
  SignedWord word;
  Root dim;
  Cone cone;
  std::string method;  // "recursive" or "oracle"
  bool is_shard_module = false;
};

// All bricks of dimension beta with their stability cones; a brick is a
// shard module iff its cone has dimension n-1.
template <class SF>
std::vector<StabResult<SF>> classify_shard_modules(const SpeciesContext<SF>& ctx,
                                                   const Root& beta, uint64_t seed = 1) {
  std::vector<StabResult<SF>> out;
  for (const auto& [w, B] : bricks_of_dimension(ctx, beta, seed)) {
    StabResult<SF> r;
    r.word = w;
    r.dim = beta;
    r.cone = stab_cone_of_word(ctx.c, w);
    r.method = "recursive";
    r.is_shard_module = (r.cone.dimension() == ctx.c.n - 1);
    out.push_back(std::move(r));
  }
  return out;
}

// The multiset of shard-module stability cones must equal the shard set,
// each shard hit exactly once.
template <class SF>
bool bijection_check(const SpeciesContext<SF>& ctx, const Root& beta, uint64_t seed = 1) {
  auto results = classify_shard_modules(ctx, beta, seed);
  std::multiset<std::string> stab_keys;
  for (const auto& r : results)
    if (r.is_shard_module) stab_keys.insert(r.cone.canonical_key());
  std::multiset<std::string> shard_keys;
  for (const auto& s : shards_direct(ctx.c, beta)) shard_keys.insert(s.cone.canonical_key());
  if (stab_keys != shard_keys) return false;
  std::set<std::string> unique(stab_keys.begin(), stab_keys.end());
  return unique.size() == stab_keys.size();
}

}  // namespace shardforge
