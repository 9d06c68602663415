// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// criterion fails.  Every tolerance is exact; all checks are pinned here.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "shardforge/shardforge.hpp"

namespace sf = shardforge;
using sf::Int;
using sf::Root;

namespace {

struct Criterion {
  std::string name;
  std::function<bool(std::string&)> run;
};

bool expect(bool ok, const std::string& what, std::string& detail) {
  if (!ok && detail.empty()) detail = what;
  return ok;
}

// 1. B2 reproduction: shard counts 1,1,2,2 by both methods, brick counts
//    1,1,2,2, bijection for all four roots.
bool criterion1(std::string& detail) {
  sf::SpeciesContext<sf::PrimeField> ctx(sf::bundled_cartan("b2"), sf::PrimeField{3});
  const std::vector<std::pair<Root, size_t>> expected = {{Root{{1, 0}}, 1},
                                                         {Root{{0, 1}}, 1},
                                                         {Root{{1, 1}}, 2},
                                                         {Root{{2, 1}}, 2}};
  bool ok = true;
  size_t total = 0;
  for (const auto& [beta, count] : expected) {
    auto direct = sf::shards_direct(ctx.c, beta);
    auto rec = sf::shards_recursive(ctx.c, beta);
    total += direct.size();
    ok &= expect(direct.size() == count, "direct shard count of " + sf::root_to_string(beta),
                 detail);
    ok &= expect(sf::shard_sets_match(direct, rec), "direct/recursive mismatch", detail);
    ok &= expect(sf::bricks_of_dimension(ctx, beta).size() == count,
                 "brick count of " + sf::root_to_string(beta), detail);
    ok &= expect(sf::bijection_check(ctx, beta), "bijection at " + sf::root_to_string(beta),
                 detail);
  }
  ok &= expect(total == 6, "six shards total", detail);
  return ok;
}

// 2. D4: 8 shards at depth 3, 14 at depth 4, exactly two of the 16 sign
//    vectors degenerate below dimension 3.
bool criterion2(std::string& detail) {
  sf::CartanData c = sf::bundled_cartan("d4");
  bool ok = true;
  ok &= expect(sf::shards_direct(c, Root{{1, 1, 1, 1}}).size() == 8, "8 shards", detail);
  auto direct = sf::shards_direct(c, Root{{2, 1, 1, 1}});
  auto rec = sf::shards_recursive(c, Root{{2, 1, 1, 1}});
  ok &= expect(direct.size() == 14, "14 shards direct", detail);
  ok &= expect(rec.size() == 14, "14 shards recursive", detail);
  ok &= expect(sf::shard_sets_match(direct, rec), "D4 direct/recursive mismatch", detail);
  auto outcomes =
      sf::shards_recursive_detailed(c, sf::positive_expression(c, Root{{2, 1, 1, 1}}));
  int degenerate = 0;
  for (const auto& o : outcomes)
    if (o.cone.dimension() < 3) ++degenerate;
  ok &= expect(outcomes.size() == 16, "16 sign vectors", detail);
  ok &= expect(degenerate == 2, "exactly two degenerations, got " + std::to_string(degenerate),
               detail);
  return ok;
}

// 3. Rank-6 counterexample: the bundled word gives a rigid brick of dimension
//    (3,3,2,4,2,1) whose stability cone is 2-dimensional with the stated rays.
bool criterion3(std::string& detail) {
  sf::SpeciesContext<sf::PrimeField> ctx(sf::bundled_cartan("rank6"), sf::PrimeField{3});
  sf::SignedWord w = sf::parse_signed_word("S6 ; 5+ 4+ 2+ 1- 4- 5- 3+ 4+ 2+ 1-", 6);
  auto B = sf::apply_signed_word(ctx, w);
  bool ok = true;
  ok &= expect(sf::dim_vector(B) == Root{{3, 3, 2, 4, 2, 1}}, "dimension vector", detail);
  ok &= expect(sf::is_brick(ctx, B), "is_brick", detail);
  ok &= expect(sf::hom_ext_dims(ctx, B, B).h1 == 0, "Ext^1(B,B) = 0", detail);
  sf::Cone stab = sf::stab_recursive(ctx, w);
  ok &= expect(stab.dimension() == 2, "stab dimension 2", detail);
  sf::VRep v = stab.vrep();
  std::set<sf::BigVec> rays(v.rays.begin(), v.rays.end());
  ok &= expect(v.lineality.empty() && rays.size() == 2 &&
                   rays.count(sf::BigVec{0, 0, -1, 0, 1, 0}) == 1 &&
                   rays.count(sf::BigVec{0, 0, 1, -1, 1, 0}) == 1,
               "primitive rays (0,0,-1,0,1,0) and (0,0,1,-1,1,0)", detail);
  ok &= expect(stab.dimension() != ctx.c.n - 1, "not a shard module", detail);
  return ok;
}

// 4. Euler identity and complex self-duality on 100 seeded pairs per datum.
bool criterion4(std::string& detail) {
  bool ok = true;
  for (const std::string name : {"a2", "b2", "d4", "rank6"}) {
    sf::SpeciesContext<sf::PrimeField> ctx(sf::bundled_cartan(name), sf::PrimeField{3});
    std::mt19937_64 rng(7);
    for (int t = 0; t < 100 && ok; ++t) {
      auto M = sf::random_module(ctx, rng);
      auto N = sf::random_module(ctx, rng);
      ok &= expect(sf::euler_check(ctx, M, N), name + " euler trial " + std::to_string(t),
                   detail);
      auto dims = sf::hom_ext_dims(ctx, M, N);
      ok &= expect(dims.h2 == int(sf::hom_basis(ctx, N, M).size()),
                   name + " self-duality trial " + std::to_string(t), detail);
    }
  }
  return ok;
}

// 5. stab_recursive = stab_oracle for every brick of depth <= 3 in A2, B2, A3.
bool criterion5(std::string& detail) {
  bool ok = true;
  for (const std::string name : {"a2", "b2", "a3"}) {
    sf::SpeciesContext<sf::PrimeField> ctx(sf::bundled_cartan(name), sf::PrimeField{3});
    auto levels = sf::positive_roots_by_depth(ctx.c, 3);
    for (const auto& level : levels)
      for (const Root& beta : level)
        for (const auto& [w, B] : sf::bricks_of_dimension(ctx, beta)) {
          sf::Cone rec = sf::stab_recursive(ctx, w);
          sf::Cone ora = sf::stab_oracle(ctx, B);
          ok &= expect(rec.equals(ora),
                       name + " " + sf::signed_word_to_string(w) + " oracle mismatch", detail);
        }
  }
  return ok;
}

// 6. Cutting bound and the cutting recursion on all covers of depth <= 6.
bool criterion6(std::string& detail) {
  bool ok = true;
  std::vector<sf::CartanData> data = {sf::bundled_cartan("b2"), sf::bundled_cartan("a3"),
                                      sf::bundled_cartan("d4")};
  for (auto [x, y, z] : std::vector<std::array<Int, 3>>{{2, 2, 2}, {2, 2, 3}, {3, 2, 2}})
    data.push_back(sf::validate({{2, 0, 0, -x}, {0, 2, 0, -y}, {0, 0, 2, -z}, {-x, -y, -z, 2}},
                                {1, 1, 1, 1}, 0, "rank4"));
  for (const auto& c : data) {
    auto levels = sf::positive_roots_by_depth(c, 6);
    for (size_t dep = 0; dep < levels.size(); ++dep)
      for (const Root& beta : levels[dep]) {
        auto e = sf::positive_expression(c, beta);
        auto systems = sf::cutting_systems(c, e);
        ok &= expect(systems.size() <= dep,
                     c.name + ": cutting bound at " + sf::root_to_string(beta), detail);
        if (dep >= levels.size() - 1) continue;  // covers would leave the sampled window
        for (int i = 0; i < c.n; ++i) {
          if (sf::coroot_pairing(c, i, beta) >= 0) continue;
          Root up = sf::reflect_root(c, i, beta);
          std::set<sf::RankTwoSystem> want;
          for (const auto& s : systems) want.insert(sf::reflect_system(c, i, s));
          want.insert(sf::make_rank_two(c, sf::simple_root(c.n, i), beta));
          auto got_list = sf::cutting_systems(c, sf::positive_expression(c, up));
          std::set<sf::RankTwoSystem> got(got_list.begin(), got_list.end());
          ok &= expect(got == want, c.name + ": cutting recursion at " + sf::root_to_string(up),
                       detail);
        }
      }
  }
  return ok;
}

// 7. Cartan dependence: determinant and cross-ratio closed forms over the
//    whole grid, plus the sign flip between x < z and x > z.
bool criterion7(std::string& detail) {
  bool det_ok = true, cross_ok = true, sign_ok = true;
  for (Int x : {2, 3, 4})
    for (Int y : {2, 3, 4})
      for (Int z : {2, 3, 4}) {
        auto rep = sf::cartan_dependence(x, y, z);
        det_ok &= (rep.determinant == rep.determinant_expected);
        cross_ok &= (rep.cross_ratio == rep.cross_ratio_expected);
        if (x < z) sign_ok &= (rep.cross_ratio < 0);
        if (x > z) sign_ok &= (rep.cross_ratio > 0);
        if (x == z) sign_ok &= (rep.cross_ratio == 0 && rep.determinant == 0);
      }
  bool ok = true;
  ok &= expect(det_ok, "determinant closed form y(x+z)(x-z)", detail);
  ok &= expect(sign_ok, "cross-ratio sign flips across x<z vs x>z", detail);
  ok &= expect(cross_ok,
               "cross-ratio closed form y(x+z)(x-z)/((z^2-1)x^2y^2); the determinant "
               "expression evaluates to (x+z)(x-z)/((z^2-1)x^2), differing by a factor y",
               detail);
  return ok;
}

// 8. Functor properties on 200 seeded modules across all bundled data.
bool criterion8(std::string& detail) {
  bool ok = true;
  int applications = 0;
  for (const std::string name : {"a2", "a3", "b2", "d4", "rank6"}) {
    sf::SpeciesContext<sf::PrimeField> ctx(sf::bundled_cartan(name), sf::PrimeField{3});
    std::mt19937_64 rng(11);
    for (int t = 0; t < 40; ++t) {
      auto M = sf::random_module(ctx, rng);
      for (int i = 0; i < ctx.c.n && ok; ++i) {
        if (sf::no_quot(ctx, M, i)) {
          // sigma_plus asserts the preprojective relation internally
          auto N = sf::sigma_plus(ctx, M, i);
          ok &= expect(sf::dim_vector(N) == sf::reflect_root(ctx.c, i, sf::dim_vector(M)),
                       name + " dim reflection (+)", detail);
          auto back = sf::sigma_minus(ctx, N, i);
          if (!sf::is_zero_vec(sf::dim_vector(M).coords))
            ok &= expect(sf::is_isomorphic(ctx, back, M), name + " roundtrip (+/-)", detail);
          ++applications;
        }
        if (sf::no_sub(ctx, M, i)) {
          auto N = sf::sigma_minus(ctx, M, i);
          ok &= expect(sf::dim_vector(N) == sf::reflect_root(ctx.c, i, sf::dim_vector(M)),
                       name + " dim reflection (-)", detail);
          auto back = sf::sigma_plus(ctx, N, i);
          if (!sf::is_zero_vec(sf::dim_vector(M).coords))
            ok &= expect(sf::is_isomorphic(ctx, back, M), name + " roundtrip (-/+)", detail);
          ++applications;
        }
      }
    }
  }
  ok &= expect(applications >= 200, "at least 200 functor applications", detail);
  return ok;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {"B2 reproduction: 1,1,2,2 shards and bricks with bijection", criterion1},
      {"D4: 8 and 14 shards, exactly two degenerate sign vectors", criterion2},
      {"rank-6 counterexample: rigid brick, 2-dimensional stability cone", criterion3},
      {"Euler identity + self-duality on 4x100 seeded module pairs", criterion4},
      {"stab_recursive equals stab_oracle for all bricks of depth <= 3", criterion5},
      {"cutting bound and cutting recursion to depth 6 in six data sets", criterion6},
      {"Cartan dependence: determinant, cross ratio, sign flip on {2,3,4}^3", criterion7},
      {"reflection functor properties on 200+ seeded modules", criterion8},
  };

  int failures = 0;
  for (size_t k = 0; k < criteria.size(); ++k) {
    auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = criteria[k].run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream line;
    line << (ok ? "[PASS]" : "[FAIL]") << " criterion " << (k + 1) << ": " << criteria[k].name
         << "  (" << std::fixed << std::setprecision(2) << secs << " s)";
    if (!ok) line << "\n       reason: " << detail;
    std::cout << line.str() << "\n";
    if (!ok) ++failures;
  }
  std::cout << (failures == 0 ? "all criteria passed"
                              : std::to_string(failures) + " criterion(s) failed")
            << "\n";
  return failures == 0 ? 0 : 1;
}
