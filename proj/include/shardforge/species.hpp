#pragma once

#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "shardforge/field_tower.hpp"
#include "shardforge/root_poset.hpp"

namespace shardforge {

// Shared data for modules over one preprojective algebra: the Cartan datum,
// the field tower, and per ordered pair (j, i) the arrow count, the chosen
// basis b^{ji} of kappa(d_ij) over kappa(d_j) (lying in kappa(d_i)), and its
// trace-dual.  sgn(i, j) = +1 iff i < j.
template <class SF>
class SpeciesContext {
 public:
  using Tower = FieldTower<SF>;
  using Elt = typename Tower::Elt;
  using TView = typename Tower::TowerView;
  using TMat = Mat<TView>;

  struct PairData {
    int q = 0;       // arrows of the pair
    int pcount = 0;  // d_ij / d_j, the size of b^{ji}
    std::vector<Elt> b, bdual;
  };

  SpeciesContext(CartanData cartan, SF sf)
      : c(std::move(cartan)), tower(sf, int(c.L)) {
    for (int i = 0; i < c.n; ++i)
      for (int j = 0; j < c.n; ++j) {
        if (!c.edge(j, i)) continue;
        PairData pd;
        pd.q = int(c.arrows(i, j));
        pd.pcount = int(c.d_ij(i, j) / c.d[size_t(j)]);
        pd.b = species_basis(tower, c, i, j);
        pd.bdual = tower.dual_basis(int(c.d[size_t(j)]), int(c.d_ij(i, j)), pd.b);
        pairs_[{j, i}] = std::move(pd);
      }
  }

  const CartanData c;
  Tower tower;

  TView view() const { return tower.view(); }
  const PairData& pair(int j, int i) const { return pairs_.at({j, i}); }
  std::vector<int> adjacent(int i) const {
    std::vector<int> out;
    for (int j = 0; j < c.n; ++j)
      if (c.edge(i, j)) out.push_back(j);
    return out;
  }
  Elt sgn(int i, int j) const { return tower.from_int(i < j ? 1 : -1); }

  // Coefficients of x over b^{ji} with coefficients in kappa(d_j).
  std::vector<Elt> expand_over(int j, int i, const Elt& x) const {
    const PairData& pd = pair(j, i);
    std::vector<Elt> z;
    for (const Elt& du : pd.bdual)
      z.push_back(tower.trace(int(c.d[size_t(j)]), int(c.d_ij(i, j)), tower.mul(x, du)));
    return z;
  }

  // Column layout of an edge matrix for pair (j, i) acting on a module with
  // m_i source dimensions: (arrow r, basis element k, source vector s).
  static int col_index(int pcount, int m, int r, int k, int s) {
    return (r * pcount + k) * m + s;
  }

 private:
  std::map<std::pair<int, int>, PairData> pairs_;
};

// Per-vertex kappa(d_i)-spaces given by their dimensions plus one
// kappa(d_j)-matrix per ordered pair (j <- i).
template <class SF>
struct SpeciesModule {
  using TMat = typename SpeciesContext<SF>::TMat;
  std::vector<int> dims;
  std::map<std::pair<int, int>, TMat> maps;  // key (target j, source i)

  int m(int i) const { return dims[size_t(i)]; }
};

template <class SF>
Root dim_vector(const SpeciesModule<SF>& M) {
  Root r;
  for (int x : M.dims) r.coords.push_back(x);
  return r;
}

template <class SF>
SpeciesModule<SF> zero_module(const SpeciesContext<SF>& ctx, std::vector<int> dims) {
  SpeciesModule<SF> M;
  M.dims = std::move(dims);
  auto F = ctx.view();
  for (int j = 0; j < ctx.c.n; ++j)
    for (int i = 0; i < ctx.c.n; ++i) {
      if (!ctx.c.edge(j, i)) continue;
      const auto& pd = ctx.pair(j, i);
      M.maps[{j, i}] = typename SpeciesContext<SF>::TMat(F, M.m(j), pd.q * pd.pcount * M.m(i));
    }
  return M;
}

template <class SF>
SpeciesModule<SF> simple(const SpeciesContext<SF>& ctx, int i) {
  std::vector<int> dims(size_t(ctx.c.n), 0);
  dims[size_t(i)] = 1;
  return zero_module(ctx, std::move(dims));
}

namespace species_detail {

// theta: from g = M_{j<-i} (kappa(d_j)-matrix) to g^vee : M_i -> E(i<-j) (x) M_j
// (kappa(d_i)-matrix with rows (r, l, t)).
template <class SF>
typename SpeciesContext<SF>::TMat theta_block(const SpeciesContext<SF>& ctx,
                                              const SpeciesModule<SF>& M, int j, int i) {
  const auto& t = ctx.tower;
  auto F = ctx.view();
  const auto& pji = ctx.pair(j, i);
  const auto& pij = ctx.pair(i, j);
  const auto& g = M.maps.at({j, i});
  const int mi = M.m(i), mj = M.m(j);
  const int di = int(ctx.c.d[size_t(i)]);
  const int dij = int(ctx.c.d_ij(i, j));
  typename SpeciesContext<SF>::TMat out(F, pji.q * pij.pcount * mj, mi);
  for (int s = 0; s < mi; ++s)
    for (int r = 0; r < pji.q; ++r)
      for (int tt = 0; tt < mj; ++tt) {
        // z = sum_k (b^{ji}_k)^* g[t, (r,k,s)] in kappa(d_ij)
        auto z = t.zero();
        for (int k = 0; k < pji.pcount; ++k)
          z = t.add(z, t.mul(pji.bdual[size_t(k)],
                             g.at(tt, SpeciesContext<SF>::col_index(pji.pcount, mi, r, k, s))));
        for (int l = 0; l < pij.pcount; ++l) {
          auto y = t.trace(di, dij, t.mul(z, pij.bdual[size_t(l)]));
          out.at(SpeciesContext<SF>::col_index(pij.pcount, mj, r, l, tt), s) = y;
        }
      }
  return out;
}

// Inverse adjunction: from u : X -> E(i<-j) (x) M_j (kappa(d_i)-matrix with
// rows (r, l, t), X of dimension k) recover u^wedge : E(j<-i) (x) X -> M_j.
template <class SF>
typename SpeciesContext<SF>::TMat wedge_block(const SpeciesContext<SF>& ctx,
                                              const typename SpeciesContext<SF>::TMat& u, int j,
                                              int i, int mj) {
  const auto& t = ctx.tower;
  auto F = ctx.view();
  const auto& pji = ctx.pair(j, i);
  const auto& pij = ctx.pair(i, j);
  const int k_dim = u.cols;
  const int dj = int(ctx.c.d[size_t(j)]);
  const int dij = int(ctx.c.d_ij(i, j));
  typename SpeciesContext<SF>::TMat out(F, mj, pji.q * pji.pcount * k_dim);
  for (int s = 0; s < k_dim; ++s)
    for (int r = 0; r < pji.q; ++r)
      for (int tt = 0; tt < mj; ++tt) {
        // z = sum_l u[(r,l,tt), s] b^{ij}_l in kappa(d_ij)
        auto z = t.zero();
        for (int l = 0; l < pij.pcount; ++l)
          z = t.add(z, t.mul(u.at(SpeciesContext<SF>::col_index(pij.pcount, mj, r, l, tt), s),
                             pij.b[size_t(l)]));
        for (int kk = 0; kk < pji.pcount; ++kk)
          out.at(tt, SpeciesContext<SF>::col_index(pji.pcount, k_dim, r, kk, s)) =
              t.trace(dj, dij, t.mul(pji.b[size_t(kk)], z));
      }
  return out;
}

}  // namespace species_detail

// Assembled maps at a vertex: M_{i,in} : M_{di} -> M_i with the sign fold,
// and M_{i,out} : M_i -> M_{di} via the adjunction.  Blocks run over the
// neighbours of i in ascending order.
template <class SF>
std::pair<typename SpeciesContext<SF>::TMat, typename SpeciesContext<SF>::TMat> in_out_maps(
    const SpeciesContext<SF>& ctx, const SpeciesModule<SF>& M, int i) {
  auto F = ctx.view();
  const auto& t = ctx.tower;
  int D = 0;
  for (int j : ctx.adjacent(i)) D += int(-ctx.c.a(i, j)) * M.m(j);
  typename SpeciesContext<SF>::TMat in(F, M.m(i), D), out(F, D, M.m(i));
  int off = 0;
  for (int j : ctx.adjacent(i)) {
    const auto& mij = M.maps.at({i, j});
    auto sg = ctx.sgn(i, j);
    for (int r = 0; r < M.m(i); ++r)
      for (int cidx = 0; cidx < mij.cols; ++cidx)
        in.at(r, off + cidx) = t.mul(sg, mij.at(r, cidx));
    auto u = species_detail::theta_block(ctx, M, j, i);
    for (int r = 0; r < u.rows; ++r)
      for (int cidx = 0; cidx < M.m(i); ++cidx) out.at(off + r, cidx) = u.at(r, cidx);
    off += mij.cols;
  }
  return {std::move(in), std::move(out)};
}

template <class SF>
bool check_preprojective(const SpeciesContext<SF>& ctx, const SpeciesModule<SF>& M) {
  auto F = ctx.view();
  for (int i = 0; i < ctx.c.n; ++i) {
    auto [in, out] = in_out_maps(ctx, M, i);
    if (!mat_is_zero(F, mat_mul(F, in, out))) return false;
  }
  return true;
}

// --- Hom complex -----------------------------------------------------------

// Structured element of the middle term: one kappa(d_j)-matrix per pair.
template <class SF>
using EdgeElement = std::map<std::pair<int, int>, typename SpeciesContext<SF>::TMat>;
// Structured element of the outer terms: one kappa(d_i)-matrix per vertex.
template <class SF>
using VertexElement = std::vector<typename SpeciesContext<SF>::TMat>;

template <class SF>
VertexElement<SF> zero_vertex_element(const SpeciesContext<SF>& ctx, const SpeciesModule<SF>& M,
                                      const SpeciesModule<SF>& N) {
  auto F = ctx.view();
  VertexElement<SF> f;
  for (int i = 0; i < ctx.c.n; ++i)
    f.push_back(typename SpeciesContext<SF>::TMat(F, N.m(i), M.m(i)));
  return f;
}

template <class SF>
EdgeElement<SF> zero_edge_element(const SpeciesContext<SF>& ctx, const SpeciesModule<SF>& M,
                                  const SpeciesModule<SF>& N) {
  auto F = ctx.view();
  EdgeElement<SF> g;
  for (int j = 0; j < ctx.c.n; ++j)
    for (int i = 0; i < ctx.c.n; ++i) {
      if (!ctx.c.edge(j, i)) continue;
      const auto& pd = ctx.pair(j, i);
      g[{j, i}] = typename SpeciesContext<SF>::TMat(F, N.m(j), pd.q * pd.pcount * M.m(i));
    }
  return g;
}

// d0(f)_{j<-i}(x (x) m) = x f_i(m) - f_j(x m)
template <class SF>
EdgeElement<SF> apply_d0(const SpeciesContext<SF>& ctx, const SpeciesModule<SF>& M,
                         const SpeciesModule<SF>& N, const VertexElement<SF>& f) {
  const auto& t = ctx.tower;
  EdgeElement<SF> out = zero_edge_element(ctx, M, N);
  for (auto& [key, gm] : out) {
    auto [j, i] = key;
    const auto& pd = ctx.pair(j, i);
    const auto& Nji = N.maps.at({j, i});
    const auto& Mji = M.maps.at({j, i});
    for (int s = 0; s < M.m(i); ++s)
      for (int r = 0; r < pd.q; ++r)
        for (int k = 0; k < pd.pcount; ++k) {
          int cc = SpeciesContext<SF>::col_index(pd.pcount, M.m(i), r, k, s);
          // term 1: act by x = b^{ji}_k along arrow r on f_i(e_s)
          for (int u = 0; u < N.m(i); ++u) {
            const auto& fu = f[size_t(i)].at(u, s);
            if (t.is_zero(fu)) continue;
            auto z = ctx.expand_over(j, i, t.mul(pd.b[size_t(k)], fu));
            for (int k2 = 0; k2 < pd.pcount; ++k2) {
              if (t.is_zero(z[size_t(k2)])) continue;
              int nc = SpeciesContext<SF>::col_index(pd.pcount, N.m(i), r, k2, u);
              for (int row = 0; row < N.m(j); ++row)
                gm.at(row, cc) = t.add(gm.at(row, cc), t.mul(z[size_t(k2)], Nji.at(row, nc)));
            }
          }
          // term 2: f_j applied to the image of the column in M_j
          for (int row = 0; row < N.m(j); ++row) {
            auto acc = t.zero();
            for (int v = 0; v < M.m(j); ++v)
              acc = t.add(acc, t.mul(f[size_t(j)].at(row, v), Mji.at(v, cc)));
            gm.at(row, cc) = t.sub(gm.at(row, cc), acc);
          }
        }
  }
  return out;
}

// d1(g)_i(m) = sum_j sgn(j,i) sum_{r,k} [ (b^{ji}_k)^* a_r^* g_{j,i}(a_r b^{ji}_k (x) m)
//                                        + g_{i,j}((b^{ji}_k)^* a_r^* (x) a_r b^{ji}_k m) ]
template <class SF>
VertexElement<SF> apply_d1(const SpeciesContext<SF>& ctx, const SpeciesModule<SF>& M,
                           const SpeciesModule<SF>& N, const EdgeElement<SF>& g) {
  const auto& t = ctx.tower;
  VertexElement<SF> out = zero_vertex_element(ctx, M, N);
  for (int i = 0; i < ctx.c.n; ++i) {
    const int di = int(ctx.c.d[size_t(i)]);
    for (int j : ctx.adjacent(i)) {
      const auto& pji = ctx.pair(j, i);
      const auto& pij = ctx.pair(i, j);
      const int dij = int(ctx.c.d_ij(i, j));
      auto sg = ctx.sgn(j, i);
      const auto& gji = g.at({j, i});
      const auto& gij = g.at({i, j});
      const auto& Nij = N.maps.at({i, j});
      const auto& Mji = M.maps.at({j, i});
      for (int s = 0; s < M.m(i); ++s)
        for (int r = 0; r < pji.q; ++r)
          for (int k = 0; k < pji.pcount; ++k) {
            int cc = SpeciesContext<SF>::col_index(pji.pcount, M.m(i), r, k, s);
            // term A: N-action of (b^{ji}_k)^* a_r^* on g_{j,i}(column)
            for (int tt = 0; tt < N.m(j); ++tt) {
              const auto& vt = gji.at(tt, cc);
              if (t.is_zero(vt)) continue;
              auto x = t.mul(pji.bdual[size_t(k)], vt);
              for (int l = 0; l < pij.pcount; ++l) {
                auto y = t.trace(di, dij, t.mul(x, pij.bdual[size_t(l)]));
                if (t.is_zero(y)) continue;
                int nc = SpeciesContext<SF>::col_index(pij.pcount, N.m(j), r, l, tt);
                for (int row = 0; row < N.m(i); ++row)
                  out[size_t(i)].at(row, s) =
                      t.add(out[size_t(i)].at(row, s),
                            t.mul(sg, t.mul(y, Nij.at(row, nc))));
              }
            }
            // term B: g_{i,j} applied to (b^{ji}_k)^* a_r^* (x) (column image in M_j)
            for (int tt = 0; tt < M.m(j); ++tt) {
              const auto& wt = Mji.at(tt, cc);
              if (t.is_zero(wt)) continue;
              auto x = t.mul(pji.bdual[size_t(k)], wt);
              for (int l = 0; l < pij.pcount; ++l) {
                auto y = t.trace(di, dij, t.mul(x, pij.bdual[size_t(l)]));
                if (t.is_zero(y)) continue;
                int gc = SpeciesContext<SF>::col_index(pij.pcount, M.m(j), r, l, tt);
                for (int row = 0; row < N.m(i); ++row)
                  out[size_t(i)].at(row, s) =
                      t.add(out[size_t(i)].at(row, s),
                            t.mul(sg, t.mul(y, gij.at(row, gc))));
              }
            }
          }
    }
  }
  return out;
}

// Three-term complex with kappa-matrices; homologies give Hom, Ext^1 and the
// dual of Hom the other way.
template <class SF>
struct HomComplex {
  int v_dim = 0, w_dim = 0;
  Mat<SF> d0;  // w_dim x v_dim
  Mat<SF> d1;  // v_dim x w_dim
};

namespace species_detail {

template <class SF>
std::vector<typename SF::Elt> flatten_vertex(const SpeciesContext<SF>& ctx,
                                             const SpeciesModule<SF>& M,
                                             const SpeciesModule<SF>& N,
                                             const VertexElement<SF>& f) {
  std::vector<typename SF::Elt> out;
  for (int i = 0; i < ctx.c.n; ++i) {
    int d = int(ctx.c.d[size_t(i)]);
    for (int tt = 0; tt < N.m(i); ++tt)
      for (int s = 0; s < M.m(i); ++s) {
        auto coords = ctx.tower.subfield_coords(d, f[size_t(i)].at(tt, s));
        out.insert(out.end(), coords.begin(), coords.end());
      }
  }
  return out;
}

template <class SF>
std::vector<typename SF::Elt> flatten_edge(const SpeciesContext<SF>& ctx,
                                           const SpeciesModule<SF>&, const SpeciesModule<SF>&,
                                           const EdgeElement<SF>& g) {
  std::vector<typename SF::Elt> out;
  for (const auto& [key, gm] : g) {
    int d = int(ctx.c.d[size_t(key.first)]);
    for (int tt = 0; tt < gm.rows; ++tt)
      for (int cc = 0; cc < gm.cols; ++cc) {
        auto coords = ctx.tower.subfield_coords(d, gm.at(tt, cc));
        out.insert(out.end(), coords.begin(), coords.end());
      }
  }
  return out;
}

}  // namespace species_detail

template <class SF>
HomComplex<SF> hom_complex(const SpeciesContext<SF>& ctx, const SpeciesModule<SF>& M,
                           const SpeciesModule<SF>& N) {
  const auto& sf = ctx.tower.scalar_field();
  HomComplex<SF> H;
  for (int i = 0; i < ctx.c.n; ++i)
    H.v_dim += int(ctx.c.d[size_t(i)]) * M.m(i) * N.m(i);
  for (int j = 0; j < ctx.c.n; ++j)
    for (int i = 0; i < ctx.c.n; ++i)
      if (ctx.c.edge(j, i))
        H.w_dim += int(-ctx.c.d[size_t(i)] * ctx.c.a(i, j)) * M.m(i) * N.m(j);

  H.d0 = Mat<SF>(sf, H.w_dim, H.v_dim);
  H.d1 = Mat<SF>(sf, H.v_dim, H.w_dim);

  // d0 columns: image of each vertex-term basis element.
  int col = 0;
  for (int i = 0; i < ctx.c.n; ++i) {
    int d = int(ctx.c.d[size_t(i)]);
    auto basis = ctx.tower.subfield_basis(d);
    for (int tt = 0; tt < N.m(i); ++tt)
      for (int s = 0; s < M.m(i); ++s)
        for (int cb = 0; cb < d; ++cb) {
          VertexElement<SF> f = zero_vertex_element(ctx, M, N);
          f[size_t(i)].at(tt, s) = basis[size_t(cb)];
          auto img = species_detail::flatten_edge(ctx, M, N, apply_d0(ctx, M, N, f));
          for (int row = 0; row < H.w_dim; ++row) H.d0.at(row, col) = img[size_t(row)];
          ++col;
        }
  }

  // d1 columns: image of each edge-term basis element.
  col = 0;
  EdgeElement<SF> gz = zero_edge_element(ctx, M, N);
  for (auto& [key, gm] : gz) {
    int d = int(ctx.c.d[size_t(key.first)]);
    auto basis = ctx.tower.subfield_basis(d);
    for (int tt = 0; tt < gm.rows; ++tt)
      for (int cc = 0; cc < gm.cols; ++cc)
        for (int cb = 0; cb < d; ++cb) {
          EdgeElement<SF> g = zero_edge_element(ctx, M, N);
          g[key].at(tt, cc) = basis[size_t(cb)];
          auto img = species_detail::flatten_vertex(ctx, M, N, apply_d1(ctx, M, N, g));
          for (int row = 0; row < H.v_dim; ++row) H.d1.at(row, col) = img[size_t(row)];
          ++col;
        }
  }
  return H;
}

struct HomExtDims {
  int h0 = 0, h1 = 0, h2 = 0;
};

template <class SF>
HomExtDims hom_ext_dims(const SpeciesContext<SF>& ctx, const SpeciesModule<SF>& M,
                        const SpeciesModule<SF>& N) {
  const auto& sf = ctx.tower.scalar_field();
  HomComplex<SF> H = hom_complex(ctx, M, N);
  int r0 = mat_rank(sf, H.d0);
  int r1 = mat_rank(sf, H.d1);
  HomExtDims out;
  out.h0 = H.v_dim - r0;
  out.h1 = (H.w_dim - r1) - r0;
  out.h2 = H.v_dim - r1;
  return out;
}

// Basis of Hom_Lambda(M, N) as structured intertwiners (kernel of d0).
template <class SF>
std::vector<VertexElement<SF>> hom_basis(const SpeciesContext<SF>& ctx,
                                         const SpeciesModule<SF>& M, const SpeciesModule<SF>& N) {
  const auto& sf = ctx.tower.scalar_field();
  HomComplex<SF> H = hom_complex(ctx, M, N);
  Mat<SF> K = kernel_basis(sf, H.d0);
  std::vector<VertexElement<SF>> out;
  for (int kc = 0; kc < K.cols; ++kc) {
    VertexElement<SF> f = zero_vertex_element(ctx, M, N);
    int row = 0;
    for (int i = 0; i < ctx.c.n; ++i) {
      int d = int(ctx.c.d[size_t(i)]);
      auto basis = ctx.tower.subfield_basis(d);
      for (int tt = 0; tt < N.m(i); ++tt)
        for (int s = 0; s < M.m(i); ++s) {
          auto acc = ctx.tower.zero();
          for (int cb = 0; cb < d; ++cb) {
            auto term = basis[size_t(cb)];
            for (auto& x : term) x = sf.mul(x, K.at(row + cb, kc));
            acc = ctx.tower.add(acc, term);
          }
          f[size_t(i)].at(tt, s) = acc;
          row += d;
        }
    }
    out.push_back(std::move(f));
  }
  return out;
}

// h0(M,N) - h1(M,N) + h0(N,M) = (dim M, dim N), with the last term computed
// directly from the intertwiner kernel of the swapped pair.
template <class SF>
bool euler_check(const SpeciesContext<SF>& ctx, const SpeciesModule<SF>& M,
                 const SpeciesModule<SF>& N) {
  HomExtDims mn = hom_ext_dims(ctx, M, N);
  int h0_back = int(hom_basis(ctx, N, M).size());
  Int lhs = Int(mn.h0) - Int(mn.h1) + Int(h0_back);
  return lhs == bilinear(ctx.c, dim_vector(M), dim_vector(N));
}

// --- brick and isomorphism tests -------------------------------------------

namespace species_detail {

template <class SF>
bool invertible_everywhere(const SpeciesContext<SF>& ctx, const VertexElement<SF>& f) {
  auto F = ctx.view();
  for (const auto& fi : f) {
    if (fi.rows != fi.cols) return false;
    if (mat_rank(F, fi) != fi.rows) return false;
  }
  return true;
}

template <class SF>
VertexElement<SF> combine_homs(const SpeciesContext<SF>& ctx, const SpeciesModule<SF>& M,
                               const SpeciesModule<SF>& N,
                               const std::vector<VertexElement<SF>>& homs,
                               const std::vector<typename SF::Elt>& coeffs) {
  const auto& sf = ctx.tower.scalar_field();
  VertexElement<SF> f = zero_vertex_element(ctx, M, N);
  for (size_t k = 0; k < homs.size(); ++k) {
    if (sf.is_zero(coeffs[k])) continue;
    auto scal = ctx.tower.from_scalar(coeffs[k]);
    for (size_t i = 0; i < f.size(); ++i)
      for (size_t e = 0; e < f[i].a.size(); ++e)
        f[i].a[e] = ctx.tower.add(f[i].a[e], ctx.tower.mul(scal, homs[k][i].a[e]));
  }
  return f;
}

// Exhaustive search threshold: scan all of a hom space with at most this many
// elements, otherwise fall back to seeded random combinations.
constexpr Int kExhaustiveLimit = 4096;
constexpr int kRandomTrials = 50;

template <class SF>
bool space_small_enough(const SpeciesContext<SF>& ctx, size_t hom_dim) {
  const auto& sf = ctx.tower.scalar_field();
  if (!sf.finite()) return false;
  Int size = 1;
  for (size_t k = 0; k < hom_dim; ++k) {
    size *= sf.cardinality();
    if (size > kExhaustiveLimit) return false;
  }
  return true;
}

// Visits coefficient tuples: every nonzero tuple when exhaustive, otherwise
// kRandomTrials seeded random nonzero tuples.  Returns false if some visited
// combination fails the predicate.
template <class SF, class Pred>
bool scan_combinations(const SpeciesContext<SF>& ctx, size_t dim, bool exhaustive, uint64_t seed,
                       bool stop_on_success, const Pred& pred) {
  const auto& sf = ctx.tower.scalar_field();
  if (exhaustive) {
    Int p = sf.cardinality();
    std::vector<Int> digits(dim, 0);
    while (true) {
      size_t pos = 0;
      while (pos < dim && ++digits[pos] == p) digits[pos++] = 0;
      if (pos == dim) break;
      std::vector<typename SF::Elt> coeffs;
      for (Int dgt : digits) coeffs.push_back(sf.from_int(dgt));
      bool ok = pred(coeffs);
      if (stop_on_success && ok) return true;
      if (!stop_on_success && !ok) return false;
    }
    return !stop_on_success;
  }
  std::mt19937_64 rng(seed);
  for (int trial = 0; trial < kRandomTrials; ++trial) {
    std::vector<typename SF::Elt> coeffs;
    bool nonzero = false;
    for (size_t k = 0; k < dim; ++k) {
      Int v = sf.finite() ? Int(rng() % uint64_t(sf.cardinality())) : Int(rng() % 7) - 3;
      if (v != 0) nonzero = true;
      coeffs.push_back(sf.from_int(v));
    }
    if (!nonzero) {
      coeffs[0] = sf.one();
    }
    bool ok = pred(coeffs);
    if (stop_on_success && ok) return true;
    if (!stop_on_success && !ok) return false;
  }
  return !stop_on_success;
}

}  // namespace species_detail

// Policy metadata for the randomized fallback, reported by the CLI.
struct IsoPolicy {
  bool exhaustive = true;
  int trials = 0;
};

// Every nonzero endomorphism invertible.  Exhaustive scan when the
// endomorphism space has at most 4096 elements; otherwise 50 seeded random
// combinations plus the End(B) = kappa(d_beta) certificate for real roots.
template <class SF>
bool is_brick(const SpeciesContext<SF>& ctx, const SpeciesModule<SF>& M, uint64_t seed = 1,
              IsoPolicy* policy = nullptr) {
  Root dim = dim_vector(M);
  if (is_zero_vec(dim.coords)) return false;
  auto homs = hom_basis(ctx, M, M);
  const size_t h = homs.size();
  bool exhaustive = species_detail::space_small_enough(ctx, h);
  if (policy) {
    policy->exhaustive = exhaustive;
    policy->trials = exhaustive ? 0 : species_detail::kRandomTrials;
  }
  auto pred = [&](const std::vector<typename SF::Elt>& coeffs) {
    return species_detail::invertible_everywhere(
        ctx, species_detail::combine_homs(ctx, M, M, homs, coeffs));
  };
  bool all_invertible =
      species_detail::scan_combinations(ctx, h, exhaustive, seed, /*stop_on_success=*/false, pred);
  if (!all_invertible) return false;
  if (!exhaustive && bilinear(ctx.c, dim, dim) > 0) {
    // Structural certificate for real dimension vectors.
    if (Int(h) != d_beta(ctx.c, dim)) return false;
  }
  return true;
}

template <class SF>
bool is_isomorphic(const SpeciesContext<SF>& ctx, const SpeciesModule<SF>& M,
                   const SpeciesModule<SF>& N, uint64_t seed = 1, IsoPolicy* policy = nullptr) {
  if (M.dims != N.dims)
    throw PreconditionError("is_isomorphic: dimension vectors differ");
  auto homs = hom_basis(ctx, M, N);
  if (homs.empty()) {
    bool zero = is_zero_vec(dim_vector(M).coords);
    return zero;  // two zero modules are isomorphic
  }
  bool exhaustive = species_detail::space_small_enough(ctx, homs.size());
  if (policy) {
    policy->exhaustive = exhaustive;
    policy->trials = exhaustive ? 0 : species_detail::kRandomTrials;
  }
  auto pred = [&](const std::vector<typename SF::Elt>& coeffs) {
    return species_detail::invertible_everywhere(
        ctx, species_detail::combine_homs(ctx, M, N, homs, coeffs));
  };
  return species_detail::scan_combinations(ctx, homs.size(), exhaustive, seed,
                                           /*stop_on_success=*/true, pred);
}

// Random modules for property tests: one direction per edge pair carries a
// random matrix, the other is zero, so the preprojective relation is
// automatic.  Seeded and deterministic.
template <class SF>
SpeciesModule<SF> random_module(const SpeciesContext<SF>& ctx, std::mt19937_64& rng,
                                int max_dim = 2) {
  const auto& t = ctx.tower;
  std::vector<int> dims;
  for (int i = 0; i < ctx.c.n; ++i) dims.push_back(int(rng() % uint64_t(max_dim + 1)));
  SpeciesModule<SF> M = zero_module(ctx, dims);
  auto random_elt = [&](int d) {
    auto basis = t.subfield_basis(d);
    auto acc = t.zero();
    for (const auto& b : basis) {
      Int v = t.scalar_field().finite() ? Int(rng() % uint64_t(t.scalar_field().cardinality()))
                                        : Int(rng() % 5) - 2;
      auto term = b;
      for (auto& x : term) x = t.scalar_field().mul(x, t.scalar_field().from_int(v));
      acc = t.add(acc, term);
    }
    return acc;
  };
  for (int i = 0; i < ctx.c.n; ++i)
    for (int j = i + 1; j < ctx.c.n; ++j) {
      if (!ctx.c.edge(i, j)) continue;
      bool forward = rng() & 1;
      int target = forward ? j : i;
      int source = forward ? i : j;
      auto& mat = M.maps.at({target, source});
      for (auto& x : mat.a) x = random_elt(int(ctx.c.d[size_t(target)]));
    }
  return M;
}

}  // namespace shardforge
