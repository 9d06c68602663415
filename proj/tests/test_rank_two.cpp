#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "shardforge/rank_two.hpp"
#include "test_helpers.hpp"

using namespace shardforge;
using sftest::rt;

TEST_CASE("B2: the whole plane is the only system cutting (a1+a2)-perp") {
  CartanData c = sftest::b2();
  auto systems = cutting_systems(c, positive_expression(c, rt({1, 1})));
  REQUIRE(systems.size() == 1);
  CHECK(systems[0] == make_rank_two(c, rt({1, 1}), simple_root(2, 1)));
}

TEST_CASE("D4: beta' = a1+a2+a3+a4 is cut by exactly three systems") {
  CartanData c = sftest::d4();
  Root beta = rt({1, 1, 1, 1});
  auto systems = cutting_systems(c, positive_expression(c, beta));
  REQUIRE(systems.size() == 3);
  std::set<RankTwoSystem> expect;
  for (int i = 1; i < 4; ++i) expect.insert(make_rank_two(c, beta, simple_root(4, i)));
  std::set<RankTwoSystem> got(systems.begin(), systems.end());
  CHECK(got == expect);
}

TEST_CASE("simple roots are cut by nothing") {
  CartanData c = sftest::d4();
  CHECK(cutting_systems(c, positive_expression(c, simple_root(4, 0))).empty());
}

TEST_CASE("cutting bound holds on samples") {
  CartanData c = sftest::b2();
  CHECK(cutting_count_bound_check(c, positive_expression(c, rt({2, 1}))));
  CartanData d = sftest::d4();
  CHECK(cutting_count_bound_check(d, positive_expression(d, rt({1, 1, 1, 1}))));
  CHECK(cutting_count_bound_check(d, positive_expression(d, simple_root(4, 2))));
}

TEST_CASE("cutting bound and cut certificates for all shallow roots") {
  for (const CartanData& c : {sftest::b2(), sftest::a3(), sftest::d4()}) {
    auto levels = positive_roots_by_depth(c, 6);
    for (const auto& level : levels)
      for (const Root& beta : level) {
        PositiveExpression e = positive_expression(c, beta);
        CHECK(cutting_count_bound_check(c, e));
        for (const Root& delta : expression_deltas(c, e))
          CHECK(certify_cut(c, beta, delta));
      }
  }
}

TEST_CASE("cutting recursion along covers") {
  for (const CartanData& c : {sftest::b2(), sftest::a3(), sftest::d4()}) {
    auto levels = positive_roots_by_depth(c, 6);
    for (const auto& level : levels)
      for (const Root& beta : level)
        for (int i = 0; i < c.n; ++i) {
          if (coroot_pairing(c, i, beta) >= 0) continue;  // want an up-cover
          Root up = reflect_root(c, i, beta);
          std::set<RankTwoSystem> expect;
          for (const auto& s : cutting_systems(c, positive_expression(c, beta)))
            expect.insert(reflect_system(c, i, s));
          expect.insert(make_rank_two(c, simple_root(c.n, i), beta));
          auto got_list = cutting_systems(c, positive_expression(c, up));
          std::set<RankTwoSystem> got(got_list.begin(), got_list.end());
          CHECK(got == expect);
        }
  }
}
