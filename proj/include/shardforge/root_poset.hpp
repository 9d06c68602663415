#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "shardforge/cartan.hpp"

namespace shardforge {

enum class CoverDir { up, down, fixed };

// Direction of beta -> s_i beta in the root poset.  beta = alpha_i with a down
// step would leave the positive roots, which is reported as an error.
inline CoverDir cover_direction(const CartanData& c, int i, const Root& beta) {
  if (!is_positive(beta)) throw PreconditionError("cover_direction: root is not positive");
  Int p = coroot_pairing(c, i, beta);
  if (p < 0) return CoverDir::up;
  if (p == 0) return CoverDir::fixed;
  auto si = simple_index(beta);
  if (si && *si == i)
    throw PreconditionError("cover_direction: down step at alpha_" + std::to_string(i + 1) +
                            " would leave the positive roots");
  return CoverDir::down;
}

// beta = s_{i_r} ... s_{i_1} alpha_j with every partial product an up-cover.
// steps are listed in application order: steps[0] = i_1 acts first.
struct PositiveExpression {
  int seed = 0;  // j
  std::vector<int> steps;
  Root resulting_root;

  int length() const { return int(steps.size()); }
};

namespace detail {

// Greedy descent: repeatedly apply s_i for the smallest i with a down-cover.
// Returns the descent vertex list (outermost reflection first) and the simple
// root reached.  Throws if the input cannot be a positive real root.
inline std::pair<std::vector<int>, int> greedy_descent(const CartanData& c, Root beta,
                                                       int bound) {
  if (!is_positive(beta))
    throw PreconditionError("root poset: '" + root_to_string(beta) + "' is not a positive root");
  std::vector<int> word;
  for (int step = 0; step <= bound; ++step) {
    if (auto si = simple_index(beta)) return {word, *si};
    int pick = -1;
    for (int i = 0; i < c.n; ++i)
      if (coroot_pairing(c, i, beta) > 0) {
        pick = i;
        break;
      }
    if (pick < 0)
      throw PreconditionError("root poset: '" + root_to_string(beta) +
                              "' has no down-cover, not a positive real root");
    beta = reflect_root(c, pick, beta);
    if (!is_positive(beta))
      throw PreconditionError("root poset: descent left the positive roots, input was not a real root");
    word.push_back(pick);
  }
  throw PreconditionError("root poset: depth search bound exceeded (" + std::to_string(bound) +
                          " steps); input may not be a positive real root");
}

}  // namespace detail

inline int depth(const CartanData& c, const Root& beta, int bound = 64) {
  return int(detail::greedy_descent(c, beta, bound).first.size());
}

inline PositiveExpression positive_expression(const CartanData& c, const Root& beta,
                                              int bound = 64) {
  auto [word, seed] = detail::greedy_descent(c, beta, bound);
  PositiveExpression e;
  e.seed = seed;
  e.steps.assign(word.rbegin(), word.rend());
  e.resulting_root = beta;
  return e;
}

// Replays the expression and checks every step is an up-cover.
inline bool verify_positive_expression(const CartanData& c, const PositiveExpression& e) {
  Root r = simple_root(c.n, e.seed);
  for (int i : e.steps) {
    if (coroot_pairing(c, i, r) >= 0) return false;
    r = reflect_root(c, i, r);
  }
  return r == e.resulting_root;
}

// All positive expressions for beta, capped; cross-check variant of the
// greedy choice.
inline std::vector<PositiveExpression> positive_expressions_all(const CartanData& c,
                                                                const Root& beta, size_t cap = 256,
                                                                int bound = 64) {
  std::vector<PositiveExpression> out;
  std::vector<int> word;
  auto dfs = [&](auto&& self, const Root& r, int steps_left) -> void {
    if (out.size() >= cap) return;
    if (auto si = simple_index(r)) {
      PositiveExpression e;
      e.seed = *si;
      e.steps.assign(word.rbegin(), word.rend());
      e.resulting_root = beta;
      out.push_back(std::move(e));
      return;
    }
    if (steps_left == 0) return;
    for (int i = 0; i < c.n && out.size() < cap; ++i) {
      if (coroot_pairing(c, i, r) <= 0) continue;
      Root down = reflect_root(c, i, r);
      if (!is_positive(down)) continue;
      word.push_back(i);
      self(self, down, steps_left - 1);
      word.pop_back();
    }
  };
  dfs(dfs, beta, bound);
  return out;
}

// Palindromic word s_{i_r} .. s_{i_1} s_j s_{i_1} .. s_{i_r} for the
// reflection over beta^perp.
struct ReflectionWord {
  std::vector<int> word;
};

inline ReflectionWord reflection_word(const PositiveExpression& e) {
  ReflectionWord w;
  for (auto it = e.steps.rbegin(); it != e.steps.rend(); ++it) w.word.push_back(*it);
  w.word.push_back(e.seed);
  for (int i : e.steps) w.word.push_back(i);
  return w;
}

// Inversion roots of the word s_{i_1} s_{i_2} ... : the k-th is
// s_{i_1} ... s_{i_{k-1}} alpha_{i_k}.  Rejects non-reduced words.
inline std::vector<Root> inversions(const CartanData& c, const std::vector<int>& word) {
  std::vector<Root> out;
  std::set<IntVec> seen;
  for (size_t k = 0; k < word.size(); ++k) {
    Root g = simple_root(c.n, word[k]);
    for (size_t m = k; m-- > 0;) g = reflect_root(c, word[m], g);
    if (!is_positive(g))
      throw ValidationError("inversions: word is not reduced (negative prefix root at position " +
                            std::to_string(k + 1) + ")");
    if (!seen.insert(g.coords).second)
      throw ValidationError("inversions: word is not reduced (repeated prefix root at position " +
                            std::to_string(k + 1) + ")");
    out.push_back(g);
  }
  return out;
}

// Applies the reflection t over beta^perp: t(x) = x - (beta^vee, x) beta.
inline Root apply_reflection(const CartanData& c, const Root& beta, const Root& x) {
  Int db = d_beta(c, beta);
  Int num = bilinear(c, beta, x);
  if (num % db != 0)
    throw PreconditionError("reflection over '" + root_to_string(beta) +
                            "' does not preserve the root lattice at '" + root_to_string(x) + "'");
  Int t = num / db;
  Root r = x;
  for (int j = 0; j < c.n; ++j) r.coords[size_t(j)] -= t * beta.coords[size_t(j)];
  return r;
}

// gamma |-> -t gamma on inv_Phi(t); the only fixed point is beta_t itself.
inline Root inversion_involution(const CartanData& c, const Root& t_root, const Root& gamma) {
  if (!is_positive(gamma))
    throw PreconditionError("inversion_involution: gamma is not a positive root");
  Root tg = apply_reflection(c, t_root, gamma);
  if (!is_negative(tg))
    throw PreconditionError("inversion_involution: '" + root_to_string(gamma) +
                            "' is not an inversion of the reflection over '" +
                            root_to_string(t_root) + "'");
  for (auto& x : tg.coords) x = -x;
  return tg;
}

// All positive real roots of depth <= max_depth, grouped by depth (breadth
// first search along up-covers from the simple roots).
inline std::vector<std::vector<Root>> positive_roots_by_depth(const CartanData& c, int max_depth) {
  std::vector<std::vector<Root>> levels;
  std::set<IntVec> seen;
  std::vector<Root> cur;
  for (int i = 0; i < c.n; ++i) {
    cur.push_back(simple_root(c.n, i));
    seen.insert(cur.back().coords);
  }
  levels.push_back(cur);
  for (int dep = 1; dep <= max_depth; ++dep) {
    std::set<IntVec> next;
    for (const auto& r : levels.back())
      for (int i = 0; i < c.n; ++i) {
        if (coroot_pairing(c, i, r) >= 0) continue;
        Root up = reflect_root(c, i, r);
        if (!seen.count(up.coords)) next.insert(up.coords);
      }
    if (next.empty()) break;
    std::vector<Root> lvl;
    for (const auto& v : next) {
      seen.insert(v);
      lvl.push_back(Root{v});
    }
    levels.push_back(std::move(lvl));
  }
  return levels;
}

}  // namespace shardforge
