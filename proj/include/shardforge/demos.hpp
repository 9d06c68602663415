#pragma once

#include <functional>

#include "shardforge/json_io.hpp"

namespace shardforge {

// Cartan data for the bundled examples; the data/ files carry the same
// matrices for use with the generic commands.
inline CartanData bundled_cartan(const std::string& name) {
  if (name == "a2") return validate({{2, -1}, {-1, 2}}, {1, 1}, 3, "a2");
  if (name == "a3")
    return validate({{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}}, {1, 1, 1}, 3, "a3");
  if (name == "b2") return validate({{2, -2}, {-1, 2}}, {1, 2}, 3, "b2");
  if (name == "d4")
    return validate({{2, -1, -1, -1}, {-1, 2, 0, 0}, {-1, 0, 2, 0}, {-1, 0, 0, 2}},
                    {1, 1, 1, 1}, 3, "d4");
  if (name == "rank6") {
    std::vector<IntVec> A(6, IntVec(6, 0));
    for (int i = 0; i < 6; ++i) A[size_t(i)][size_t(i)] = 2;
    auto link = [&](int i, int j) {
      A[size_t(i)][size_t(j)] = -1;
      A[size_t(j)][size_t(i)] = -1;
    };
    link(0, 3);
    link(1, 3);
    link(2, 3);
    link(3, 4);
    link(4, 5);
    return validate(A, IntVec(6, 1), 3, "rank6");
  }
  if (name == "rank4-dependence")
    return validate({{2, 0, 0, -2}, {0, 2, 0, -2}, {0, 0, 2, -3}, {-2, -2, -3, 2}},
                    {1, 1, 1, 1}, 3, "rank4-dependence");
  throw ValidationError("unknown bundled cartan '" + name + "'");
}

inline std::vector<std::string> bundled_cartan_names() {
  return {"a2", "a3", "b2", "d4", "rank6", "rank4-dependence"};
}

// --- Cartan dependence of shards (rank 4 family) ----------------------------

inline BigInt det_cols(const std::vector<Root>& roots, std::vector<int> pick) {
  const int n = int(pick.size());
  std::vector<std::vector<BigInt>> m(size_t(n), std::vector<BigInt>(size_t(n), BigInt(0)));
  for (int cidx = 0; cidx < n; ++cidx)
    for (int r = 0; r < n; ++r) m[size_t(r)][size_t(cidx)] = roots[size_t(pick[size_t(cidx)])].coords[size_t(r)];
  // Laplace expansion along the first column; n <= 4 here.
  std::function<BigInt(std::vector<std::vector<BigInt>>)> det =
      [&](std::vector<std::vector<BigInt>> a) -> BigInt {
    const int k = int(a.size());
    if (k == 1) return a[0][0];
    BigInt acc = 0;
    for (int r = 0; r < k; ++r) {
      if (a[size_t(r)][0] == 0) continue;
      std::vector<std::vector<BigInt>> minor;
      for (int rr = 0; rr < k; ++rr) {
        if (rr == r) continue;
        std::vector<BigInt> row(a[size_t(rr)].begin() + 1, a[size_t(rr)].end());
        minor.push_back(std::move(row));
      }
      BigInt term = a[size_t(r)][0] * det(minor);
      acc += (r % 2 == 0) ? term : -term;
    }
    return acc;
  };
  return det(m);
}

struct CartanDependenceReport {
  Int x, y, z;
  std::vector<Root> gammas;
  BigInt determinant, determinant_expected;
  BigRat cross_ratio, cross_ratio_expected;
  size_t regions = 0;
};

// Inversions of w = s1 s2 s4 s1 s3 s4 s2 s3 in the rank 4 family, the
// determinant det(g1,g2,g7,g8), the cross ratio of the four lines in
// g1-perp cap g2-perp, and the region count of the eight-hyperplane
// arrangement.
inline CartanDependenceReport cartan_dependence(Int x, Int y, Int z, int threads = 1) {
  if (x < 2 || y < 2 || z < 2)
    throw ValidationError("cartan-dependence: x, y, z must all be at least 2");
  CartanData c = validate({{2, 0, 0, -x}, {0, 2, 0, -y}, {0, 0, 2, -z}, {-x, -y, -z, 2}},
                          {1, 1, 1, 1}, 0, "rank4");
  CartanDependenceReport rep;
  rep.x = x;
  rep.y = y;
  rep.z = z;
  rep.gammas = inversions(c, {0, 1, 3, 0, 2, 3, 1, 2});

  rep.determinant = det_cols(rep.gammas, {0, 1, 6, 7});
  rep.determinant_expected = BigInt(y) * BigInt(x + z) * BigInt(x - z);

  BigInt n1 = det_cols(rep.gammas, {0, 1, 2, 4});
  BigInt n2 = rep.determinant;
  BigInt d1 = det_cols(rep.gammas, {0, 1, 2, 7});
  BigInt d2 = det_cols(rep.gammas, {0, 1, 4, 6});
  if (d1 == 0 || d2 == 0) throw std::logic_error("cartan-dependence: degenerate cross ratio");
  rep.cross_ratio = BigRat(n1 * n2) / BigRat(d1 * d2);
  rep.cross_ratio_expected = BigRat(BigInt(y) * BigInt(x + z) * BigInt(x - z)) /
                             BigRat(BigInt(z * z - 1) * BigInt(x) * BigInt(x) * BigInt(y) *
                                    BigInt(y));

  // Full-dimensional sign cells of the arrangement of the eight gamma-perp.
  std::mutex mu;
  parallel_for(size_t(1) << 8, threads, [&](size_t mask) {
    std::vector<BigVec> ineqs;
    for (size_t k = 0; k < 8; ++k) {
      BigVec nu = to_big(rep.gammas[k].coords);
      ineqs.push_back((mask >> k) & 1 ? negate(nu) : nu);
    }
    if (Cone(4, {}, ineqs).dimension() == 4) {
      std::lock_guard<std::mutex> lock(mu);
      ++rep.regions;
    }
  });
  return rep;
}

inline json cartan_dependence_json(const CartanDependenceReport& rep) {
  json j;
  j["x"] = rep.x;
  j["y"] = rep.y;
  j["z"] = rep.z;
  json roots = json::array();
  for (const auto& g : rep.gammas) roots.push_back(vec_to_json(g.coords));
  j["inversions"] = roots;
  j["determinant"] = big_to_ll(rep.determinant);
  j["determinant_expected"] = big_to_ll(rep.determinant_expected);
  std::ostringstream cr, cre;
  cr << rep.cross_ratio;
  cre << rep.cross_ratio_expected;
  j["cross_ratio"] = cr.str();
  j["cross_ratio_expected"] = cre.str();
  j["determinant_matches"] = (rep.determinant == rep.determinant_expected);
  j["cross_ratio_matches"] = (rep.cross_ratio == rep.cross_ratio_expected);
  j["regions"] = rep.regions;
  return j;
}

// --- bundled demos -----------------------------------------------------------

template <class SF>
json shards_report(const SpeciesContext<SF>& ctx, const Root& beta, int threads) {
  json j;
  j["root"] = root_to_string(beta);
  auto direct = shards_direct(ctx.c, beta, threads);
  auto rec = shards_recursive(ctx.c, beta);
  j["count"] = direct.size();
  j["verdict"] = shard_sets_match(direct, rec) ? "match" : "mismatch";
  json arr = json::array();
  for (const auto& s : rec) arr.push_back(shard_to_json(s));
  j["shards"] = arr;
  auto bricks = bricks_of_dimension(ctx, beta);
  j["brick_count"] = bricks.size();
  j["bijection"] = bijection_check(ctx, beta);
  return j;
}

inline json demo_b2_six_shards(int threads = 1) {
  SpeciesContext<PrimeField> ctx(bundled_cartan("b2"), PrimeField{3});
  json j;
  j["demo"] = "b2-six-shards";
  j["cartan"] = cartan_to_json(ctx.c);
  json per_root = json::array();
  size_t total = 0;
  for (const Root& beta :
       {simple_root(2, 0), simple_root(2, 1), Root{{1, 1}}, Root{{2, 1}}}) {
    json r = shards_report(ctx, beta, threads);
    total += r["count"].get<size_t>();
    per_root.push_back(std::move(r));
  }
  j["roots"] = per_root;
  j["total_shards"] = total;
  return j;
}

inline json demo_d4_fourteen(int threads = 1) {
  SpeciesContext<PrimeField> ctx(bundled_cartan("d4"), PrimeField{3});
  json j;
  j["demo"] = "d4-fourteen";
  j["cartan"] = cartan_to_json(ctx.c);
  json per_root = json::array();
  per_root.push_back(shards_report(ctx, Root{{1, 1, 1, 1}}, threads));
  per_root.push_back(shards_report(ctx, Root{{2, 1, 1, 1}}, threads));
  j["roots"] = per_root;
  auto outcomes = shards_recursive_detailed(ctx.c, positive_expression(ctx.c, Root{{2, 1, 1, 1}}));
  int degenerate = 0;
  for (const auto& o : outcomes)
    if (o.cone.dimension() < 3) ++degenerate;
  j["sign_vectors"] = outcomes.size();
  j["degenerate_sign_vectors"] = degenerate;
  return j;
}

inline json demo_rank6_counterexample() {
  SpeciesContext<PrimeField> ctx(bundled_cartan("rank6"), PrimeField{3});
  SignedWord w = parse_signed_word("S6 ; 5+ 4+ 2+ 1- 4- 5- 3+ 4+ 2+ 1-", 6);
  auto B = apply_signed_word(ctx, w);
  json j;
  j["demo"] = "rank6-counterexample";
  j["cartan"] = cartan_to_json(ctx.c);
  j["word"] = signed_word_to_string(w);
  j["dim"] = vec_to_json(dim_vector(B).coords);
  j["is_brick"] = is_brick(ctx, B);
  j["ext1_self"] = hom_ext_dims(ctx, B, B).h1;
  Cone stab = stab_recursive(ctx, w);
  j["stab"] = cone_to_json(stab);
  j["is_shard_module"] = (stab.dimension() == ctx.c.n - 1);
  j["module"] = module_to_json(ctx, B);
  return j;
}

inline json demo_cartan_dependence(Int x = 2, Int y = 2, Int z = 3, int threads = 1) {
  json j = cartan_dependence_json(cartan_dependence(x, y, z, threads));
  j["demo"] = "cartan-dependence";
  return j;
}

inline json run_demo(const std::string& name, int threads = 1) {
  if (name == "b2-six-shards") return demo_b2_six_shards(threads);
  if (name == "d4-fourteen") return demo_d4_fourteen(threads);
  if (name == "rank6-counterexample") return demo_rank6_counterexample();
  if (name == "cartan-dependence") return demo_cartan_dependence(2, 2, 3, threads);
  throw ValidationError("unknown demo '" + name +
                        "'; available: b2-six-shards, d4-fourteen, rank6-counterexample, "
                        "cartan-dependence");
}

}  // namespace shardforge
