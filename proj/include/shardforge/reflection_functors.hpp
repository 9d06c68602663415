#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "shardforge/species.hpp"

namespace shardforge {

// Signed product Sigma^{±r}_{i_r} ... Sigma^{±1}_{i_1} S_j; steps listed in
// application order (first applied first).  Text form "S6 ; 5+ 4+ 2+ 1-"
// uses 1-based vertex names.
struct SignedWord {
  int seed = 0;
  std::vector<std::pair<int, int>> steps;  // (vertex, sign)

  std::vector<int> unsigned_steps() const {
    std::vector<int> out;
    for (auto [v, s] : steps) out.push_back(v);
    return out;
  }
};

inline std::string signed_word_to_string(const SignedWord& w) {
  std::ostringstream os;
  os << "S" << (w.seed + 1) << " ;";
  for (auto [v, s] : w.steps) os << " " << (v + 1) << (s > 0 ? '+' : '-');
  return os.str();
}

inline SignedWord parse_signed_word(const std::string& text, int n) {
  SignedWord w;
  std::istringstream is(text);
  std::string tok;
  bool have_seed = false, seen_semicolon = false;
  while (is >> tok) {
    if (tok == ";") {
      seen_semicolon = true;
      continue;
    }
    if (!have_seed) {
      if (tok.size() < 2 || (tok[0] != 'S' && tok[0] != 's'))
        throw ValidationError("signed word: expected seed 'S<j>', got '" + tok + "'");
      std::string num = tok.substr(1);
      if (!num.empty() && num.back() == ';') {
        num.pop_back();
        seen_semicolon = true;
      }
      w.seed = std::stoi(num) - 1;
      if (w.seed < 0 || w.seed >= n) throw ValidationError("signed word: seed out of range");
      have_seed = true;
      continue;
    }
    if (!seen_semicolon) throw ValidationError("signed word: missing ';' after seed");
    char sign = tok.back();
    if (sign != '+' && sign != '-')
      throw ValidationError("signed word: step '" + tok + "' needs a trailing sign");
    int v = std::stoi(tok.substr(0, tok.size() - 1)) - 1;
    if (v < 0 || v >= n) throw ValidationError("signed word: vertex out of range in '" + tok + "'");
    w.steps.push_back({v, sign == '+' ? +1 : -1});
  }
  if (!have_seed) throw ValidationError("signed word: empty");
  return w;
}

// S_i is not a quotient of M iff the assembled in-map at i is surjective;
// not a submodule iff the out-map is injective.
template <class SF>
bool no_quot(const SpeciesContext<SF>& ctx, const SpeciesModule<SF>& M, int i) {
  auto [in, out] = in_out_maps(ctx, M, i);
  return mat_rank(ctx.view(), in) == M.m(i);
}

template <class SF>
bool no_sub(const SpeciesContext<SF>& ctx, const SpeciesModule<SF>& M, int i) {
  auto [in, out] = in_out_maps(ctx, M, i);
  return mat_rank(ctx.view(), out) == M.m(i);
}

namespace functor_detail {

// Split a D-row matrix into the block of rows belonging to neighbour j.
template <class SF>
typename SpeciesContext<SF>::TMat row_block(const SpeciesContext<SF>& ctx,
                                            const SpeciesModule<SF>& M, int i, int j,
                                            const typename SpeciesContext<SF>::TMat& big) {
  auto F = ctx.view();
  int off = 0;
  for (int jj : ctx.adjacent(i)) {
    int width = int(-ctx.c.a(i, jj)) * M.m(jj);
    if (jj == j) {
      typename SpeciesContext<SF>::TMat out(F, width, big.cols);
      for (int r = 0; r < width; ++r)
        for (int cidx = 0; cidx < big.cols; ++cidx) out.at(r, cidx) = big.at(off + r, cidx);
      return out;
    }
    off += width;
  }
  throw PreconditionError("row_block: not a neighbour");
}

template <class SF>
typename SpeciesContext<SF>::TMat col_block(const SpeciesContext<SF>& ctx,
                                            const SpeciesModule<SF>& M, int i, int j,
                                            const typename SpeciesContext<SF>::TMat& big) {
  auto F = ctx.view();
  int off = 0;
  for (int jj : ctx.adjacent(i)) {
    int width = int(-ctx.c.a(i, jj)) * M.m(jj);
    if (jj == j) {
      typename SpeciesContext<SF>::TMat out(F, big.rows, width);
      for (int r = 0; r < big.rows; ++r)
        for (int cidx = 0; cidx < width; ++cidx) out.at(r, cidx) = big.at(r, off + cidx);
      return out;
    }
    off += width;
  }
  throw PreconditionError("col_block: not a neighbour");
}

template <class SF>
void assert_functor_postconditions(const SpeciesContext<SF>& ctx, const SpeciesModule<SF>& M,
                                   const SpeciesModule<SF>& N, int i, const char* which) {
  if (!check_preprojective(ctx, N))
    throw std::logic_error(std::string(which) +
                           ": preprojective relation broken after reflection");
  Root expect = reflect_root(ctx.c, i, dim_vector(M));
  if (!(dim_vector(N) == expect))
    throw std::logic_error(std::string(which) + ": dimension vector did not reflect");
}

}  // namespace functor_detail

// Sigma_i: kernel of the in-map becomes the new vertex space.  Defined for
// M with no quotient S_i.
template <class SF>
SpeciesModule<SF> sigma_plus(const SpeciesContext<SF>& ctx, const SpeciesModule<SF>& M, int i) {
  auto F = ctx.view();
  auto [in, out] = in_out_maps(ctx, M, i);
  if (mat_rank(F, in) != M.m(i))
    throw PreconditionError("reflection functor undefined at vertex " + std::to_string(i + 1) +
                            ": S_i is a quotient");
  typename SpeciesContext<SF>::TMat K = kernel_basis(F, in);  // D x k, the new out-map
  auto mhat = mat_solve(F, K, out);                           // K * mhat = out
  if (!mhat) throw std::logic_error("sigma_plus: out-map does not factor through the kernel");
  typename SpeciesContext<SF>::TMat new_in = mat_mul(F, *mhat, in);  // k x D

  std::vector<int> dims = M.dims;
  dims[size_t(i)] = K.cols;
  SpeciesModule<SF> N = zero_module(ctx, dims);
  for (const auto& [key, mat] : M.maps)
    if (key.first != i && key.second != i) N.maps[key] = mat;
  for (int j : ctx.adjacent(i)) {
    // incoming: strip the sign fold from the assembled in-map block
    auto blk = functor_detail::col_block(ctx, M, i, j, new_in);
    auto sg = ctx.sgn(i, j);
    for (auto& x : blk.a) x = ctx.tower.mul(sg, x);
    N.maps[{i, j}] = std::move(blk);
    // outgoing: the kernel inclusion block, pushed through the adjunction
    auto ublk = functor_detail::row_block(ctx, M, i, j, K);
    N.maps[{j, i}] = species_detail::wedge_block(ctx, ublk, j, i, M.m(j));
  }
  functor_detail::assert_functor_postconditions(ctx, M, N, i, "sigma_plus");
  return N;
}

// Sigma_i^{-1}: cokernel of the out-map becomes the new vertex space.
// Defined for M with no submodule S_i.
template <class SF>
SpeciesModule<SF> sigma_minus(const SpeciesContext<SF>& ctx, const SpeciesModule<SF>& M, int i) {
  auto F = ctx.view();
  const auto& t = ctx.tower;
  auto [in, out] = in_out_maps(ctx, M, i);
  const int D = out.rows;
  if (mat_rank(F, out) != M.m(i))
    throw PreconditionError("reflection functor undefined at vertex " + std::to_string(i + 1) +
                            ": S_i is a submodule");

  // Echelonize out^T; pivot coordinates of kappa^D span the image, the free
  // coordinates index a canonical complement.
  typename SpeciesContext<SF>::TMat outT = mat_transpose(F, out);
  auto pivots = row_reduce(F, outT);
  std::vector<bool> is_pivot(size_t(D), false);
  for (int p : pivots) is_pivot[size_t(p)] = true;
  std::vector<int> free_coords;
  for (int r = 0; r < D; ++r)
    if (!is_pivot[size_t(r)]) free_coords.push_back(r);
  const int cdim = int(free_coords.size());

  // Projection pi : kappa^D -> coker with kernel im(out);
  // pi(v)_f = v_f - sum_k v_{P_k} (row_k)_f.
  typename SpeciesContext<SF>::TMat pi(F, cdim, D);
  for (int fidx = 0; fidx < cdim; ++fidx) {
    pi.at(fidx, free_coords[size_t(fidx)]) = t.one();
    for (size_t k = 0; k < pivots.size(); ++k)
      pi.at(fidx, pivots[k]) = t.neg(outT.at(int(k), free_coords[size_t(fidx)]));
  }
  // Section picks the unit vectors at the free coordinates; the factorized
  // map coker -> M_i is in-map restricted to those columns.
  typename SpeciesContext<SF>::TMat dashed(F, M.m(i), cdim);
  for (int fidx = 0; fidx < cdim; ++fidx)
    for (int r = 0; r < M.m(i); ++r) dashed.at(r, fidx) = in.at(r, free_coords[size_t(fidx)]);
  typename SpeciesContext<SF>::TMat new_out = mat_mul(F, out, dashed);  // D x cdim

  std::vector<int> dims = M.dims;
  dims[size_t(i)] = cdim;
  SpeciesModule<SF> N = zero_module(ctx, dims);
  for (const auto& [key, mat] : M.maps)
    if (key.first != i && key.second != i) N.maps[key] = mat;
  for (int j : ctx.adjacent(i)) {
    auto blk = functor_detail::col_block(ctx, M, i, j, pi);
    auto sg = ctx.sgn(i, j);
    for (auto& x : blk.a) x = t.mul(sg, x);
    N.maps[{i, j}] = std::move(blk);
    auto ublk = functor_detail::row_block(ctx, M, i, j, new_out);
    N.maps[{j, i}] = species_detail::wedge_block(ctx, ublk, j, i, M.m(j));
  }
  functor_detail::assert_functor_postconditions(ctx, M, N, i, "sigma_minus");
  return N;
}

template <class SF>
SpeciesModule<SF> apply_signed_step(const SpeciesContext<SF>& ctx, const SpeciesModule<SF>& M,
                                    int vertex, int sign) {
  return sign > 0 ? sigma_plus(ctx, M, vertex) : sigma_minus(ctx, M, vertex);
}

template <class SF>
bool signed_step_defined(const SpeciesContext<SF>& ctx, const SpeciesModule<SF>& M, int vertex,
                         int sign) {
  return sign > 0 ? no_quot(ctx, M, vertex) : no_sub(ctx, M, vertex);
}

// Evaluates the signed product; throws PreconditionError at the first
// undefined step.
template <class SF>
SpeciesModule<SF> apply_signed_word(const SpeciesContext<SF>& ctx, const SignedWord& w) {
  SpeciesModule<SF> M = simple(ctx, w.seed);
  for (auto [v, s] : w.steps) M = apply_signed_step(ctx, M, v, s);
  return M;
}

// All bricks of the expression's root: the well-defined signed products along
// it, deduplicated by isomorphism.  Any positive expression yields the same
// modules up to isomorphism; the count of well-defined sign vectors may
// depend on the expression.
template <class SF>
std::vector<std::pair<SignedWord, SpeciesModule<SF>>> bricks_along_expression(
    const SpeciesContext<SF>& ctx, const PositiveExpression& e, uint64_t seed = 1) {
  const size_t r = e.steps.size();
  if (r >= 24)
    throw OracleRangeError("bricks: 2^" + std::to_string(r) +
                           " sign vectors exceed the enumeration budget");
  std::vector<std::pair<SignedWord, SpeciesModule<SF>>> found;
  for (size_t mask = 0; mask < (size_t(1) << r); ++mask) {
    SignedWord w;
    w.seed = e.seed;
    SpeciesModule<SF> M = simple(ctx, e.seed);
    bool ok = true;
    for (size_t q = 0; q < r && ok; ++q) {
      int v = e.steps[q];
      int s = (mask >> q) & 1 ? -1 : +1;
      w.steps.push_back({v, s});
      if (!signed_step_defined(ctx, M, v, s)) {
        ok = false;
        break;
      }
      M = apply_signed_step(ctx, M, v, s);
    }
    if (!ok) continue;
    bool duplicate = false;
    for (const auto& [w0, M0] : found)
      if (is_isomorphic(ctx, M0, M, seed)) {
        duplicate = true;
        break;
      }
    if (!duplicate) found.push_back({std::move(w), std::move(M)});
  }
  return found;
}

// Bricks of dimension beta along the greedy positive expression.
template <class SF>
std::vector<std::pair<SignedWord, SpeciesModule<SF>>> bricks_of_dimension(
    const SpeciesContext<SF>& ctx, const Root& beta, uint64_t seed = 1) {
  return bricks_along_expression(ctx, positive_expression(ctx.c, beta), seed);
}

}  // namespace shardforge
