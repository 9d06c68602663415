#pragma once

#include <map>
#include <string>
#include <vector>

#include "shardforge/cone.hpp"
#include "shardforge/parallel.hpp"
#include "shardforge/rank_two.hpp"

namespace shardforge {

// A shard of beta^perp: an (n-1)-dimensional cone cut out by the rank two
// subsystems cutting beta^perp.  provenance records the sign word when the
// shard came out of the recursive sigma-product enumeration.
struct Shard {
  Root normal;
  Cone cone;
  std::string provenance;
};

namespace detail {

// A functional in span(R) independent from beta; vanishing on it cuts
// beta^perp along R^perp.
inline BigVec cutting_functional(const RankTwoSystem& R, const Root& beta) {
  for (const BigVec& row : R.span_basis) {
    // parallel iff all 2x2 minors with beta vanish
    bool parallel = true;
    for (size_t a = 0; a < row.size() && parallel; ++a)
      for (size_t b = a + 1; b < row.size() && parallel; ++b)
        if (row[a] * beta.coords[b] - row[b] * beta.coords[a] != 0) parallel = false;
    if (!parallel) return row;
  }
  throw PreconditionError("cutting_functional: subsystem plane degenerate");
}

}  // namespace detail

// Direct method: enumerate the sign cells of the shard arrangement in
// beta^perp and keep those of dimension n-1.
inline std::vector<Shard> shards_direct(const CartanData& c, const Root& beta, int threads = 1) {
  PositiveExpression e = positive_expression(c, beta);
  auto systems = cutting_systems(c, e);
  const size_t k = systems.size();
  if (k >= 24)
    throw OracleRangeError("shards_direct: 2^" + std::to_string(k) +
                           " sign cells exceed the enumeration budget");
  std::vector<BigVec> cuts;
  for (const auto& R : systems) cuts.push_back(detail::cutting_functional(R, beta));

  const Cone base = hyperplane(beta);
  std::map<std::string, Shard> found;
  std::mutex mu;
  parallel_for(size_t(1) << k, threads, [&](size_t mask) {
    std::vector<BigVec> ineqs;
    for (size_t j = 0; j < k; ++j)
      ineqs.push_back((mask >> j) & 1 ? negate(cuts[j]) : cuts[j]);
    Cone cell = base.intersected({}, ineqs);
    if (cell.dimension() != c.n - 1) return;
    std::string key = cell.canonical_key();
    std::lock_guard<std::mutex> lock(mu);
    found.emplace(std::move(key), Shard{beta, std::move(cell), ""});
  });

  std::vector<Shard> out;
  for (auto& [key, sh] : found) out.push_back(std::move(sh));
  return out;
}

// One branch of the recursive enumeration: the sign word (in application
// order) and the resulting sigma-product cone.
struct SignVectorOutcome {
  std::string signs;
  Cone cone;
};

// Evaluates sigma_{i_r}^{±} ... sigma_{i_1}^{±}(alpha_j^perp) for all 2^r
// sign vectors, sharing common prefixes.
inline std::vector<SignVectorOutcome> shards_recursive_detailed(const CartanData& c,
                                                                const PositiveExpression& e) {
  if (e.steps.size() >= 24)
    throw OracleRangeError("shards_recursive: 2^" + std::to_string(e.steps.size()) +
                           " sign vectors exceed the enumeration budget");
  std::vector<SignVectorOutcome> out;
  std::string signs;
  Cone start = hyperplane(simple_root(c.n, e.seed));
  auto dfs = [&](auto&& self, const Cone& K, size_t level) -> void {
    if (level == e.steps.size()) {
      out.push_back({signs, K});
      return;
    }
    int i = e.steps[level];
    for (int sign : {+1, -1}) {
      signs.push_back(sign > 0 ? '+' : '-');
      self(self, sigma(c, i, sign, K), level + 1);
      signs.pop_back();
    }
  };
  dfs(dfs, start, 0);
  return out;
}

// Recursive method: full-dimensional sigma products, deduplicated by
// canonical cone.  Memoizes on (level, canonical cone) so sign prefixes that
// collapse to the same cone are expanded once.
inline std::vector<Shard> shards_recursive(const CartanData& c, const PositiveExpression& e) {
  const Root& beta = e.resulting_root;
  std::map<std::pair<size_t, std::string>, std::vector<std::pair<std::string, Cone>>> memo;

  auto expand = [&](auto&& self, const Cone& K, size_t level)
      -> const std::vector<std::pair<std::string, Cone>>& {
    auto key = std::make_pair(level, K.canonical_key());
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    std::vector<std::pair<std::string, Cone>> res;
    if (level == e.steps.size()) {
      res.push_back({"", K});
    } else {
      int i = e.steps[level];
      for (int sign : {+1, -1}) {
        Cone next = sigma(c, i, sign, K);
        if (next.dimension() >= c.n - 1) {  // sigma never raises dimension
          for (const auto& [suffix, cone] : self(self, next, level + 1))
            res.push_back({std::string(1, sign > 0 ? '+' : '-') + suffix, cone});
        }
      }
    }
    return memo.emplace(std::move(key), std::move(res)).first->second;
  };

  Cone start = hyperplane(simple_root(c.n, e.seed));
  std::map<std::string, Shard> found;
  for (const auto& [signs, cone] : expand(expand, start, 0)) {
    if (cone.dimension() != c.n - 1) continue;
    std::string key = cone.canonical_key();
    auto it = found.find(key);
    if (it == found.end() || signs < it->second.provenance)
      found.insert_or_assign(key, Shard{beta, cone, signs});
  }
  std::vector<Shard> out;
  for (auto& [key, sh] : found) out.push_back(std::move(sh));
  return out;
}

inline std::vector<Shard> shards_recursive(const CartanData& c, const Root& beta) {
  return shards_recursive(c, positive_expression(c, beta));
}

inline bool shard_sets_match(const std::vector<Shard>& a, const std::vector<Shard>& b) {
  if (a.size() != b.size()) return false;
  std::set<std::string> ka, kb;
  for (const auto& s : a) ka.insert(s.cone.canonical_key());
  for (const auto& s : b) kb.insert(s.cone.canonical_key());
  return ka == kb;
}

}  // namespace shardforge
