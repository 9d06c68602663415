#pragma once

#include <set>
#include <vector>

#include "shardforge/linalg.hpp"
#include "shardforge/root_poset.hpp"

namespace shardforge {

// A rank two subsystem Phi ∩ span(beta, delta), identified by the canonical
// basis of its plane (integer-scaled reduced echelon rows, pivots positive),
// so equality of subsystems is equality of the basis.
struct RankTwoSystem {
  std::vector<BigVec> span_basis;  // 2 rows, canonical
  Root witness_beta, witness_delta;

  bool operator<(const RankTwoSystem& o) const { return span_basis < o.span_basis; }
  bool operator==(const RankTwoSystem& o) const { return span_basis == o.span_basis; }
};

inline RankTwoSystem make_rank_two(const CartanData& c, const Root& beta, const Root& delta) {
  RankTwoSystem s;
  s.span_basis = canonical_subspace_basis({to_big(beta.coords), to_big(delta.coords)}, c.n);
  if (s.span_basis.size() != 2)
    throw PreconditionError("rank two subsystem: '" + root_to_string(beta) + "' and '" +
                            root_to_string(delta) + "' do not span a plane");
  s.witness_beta = beta;
  s.witness_delta = delta;
  return s;
}

inline RankTwoSystem reflect_system(const CartanData& c, int i, const RankTwoSystem& s) {
  return make_rank_two(c, reflect_root(c, i, s.witness_beta),
                       reflect_root(c, i, s.witness_delta));
}

// The delta roots of an expression: delta_k = s_{i_r} ... s_{i_{k+1}} alpha_{i_k}.
inline std::vector<Root> expression_deltas(const CartanData& c, const PositiveExpression& e) {
  const int r = e.length();
  std::vector<Root> out;
  for (int k = 0; k < r; ++k) {
    Root v = simple_root(c.n, e.steps[size_t(k)]);
    for (int m = k + 1; m < r; ++m) v = reflect_root(c, e.steps[size_t(m)], v);
    out.push_back(v);
  }
  return out;
}

// The rank two subsystems cutting beta^perp, computed as span(beta, delta_k)
// over the expression's deltas and deduplicated by canonical plane.
inline std::vector<RankTwoSystem> cutting_systems(const CartanData& c,
                                                  const PositiveExpression& e) {
  const Root& beta = e.resulting_root;
  std::set<RankTwoSystem> out;
  for (const Root& delta : expression_deltas(c, e)) out.insert(make_rank_two(c, beta, delta));
  return {out.begin(), out.end()};
}

inline bool cutting_count_bound_check(const CartanData& c, const PositiveExpression& e) {
  return cutting_systems(c, e).size() <= size_t(e.length());
}

// Certifies that beta is not fundamental in span(beta, delta): beta must be a
// strictly positive combination of the positive roots delta and -t(delta).
inline bool certify_cut(const CartanData& c, const Root& beta, const Root& delta) {
  Root other = inversion_involution(c, beta, delta);  // throws if delta not an inversion
  // Solve beta = a * delta + b * other over the rationals.
  RationalField f;
  Mat<RationalField> A(f, c.n, 2), B(f, c.n, 1);
  for (int j = 0; j < c.n; ++j) {
    A.at(j, 0) = BigRat(delta.coords[size_t(j)]);
    A.at(j, 1) = BigRat(other.coords[size_t(j)]);
    B.at(j, 0) = BigRat(beta.coords[size_t(j)]);
  }
  auto X = mat_solve(f, A, B);
  if (!X) return false;
  return X->at(0, 0) > 0 && X->at(1, 0) > 0;
}

}  // namespace shardforge
