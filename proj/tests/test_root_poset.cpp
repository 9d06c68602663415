#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "shardforge/root_poset.hpp"
#include "test_helpers.hpp"

using namespace shardforge;
using sftest::rt;

TEST_CASE("cover directions in B2") {
  CartanData c = sftest::b2();
  CHECK(cover_direction(c, 0, simple_root(2, 1)) == CoverDir::up);
  CHECK(cover_direction(c, 1, rt({1, 1})) == CoverDir::down);
  CHECK(cover_direction(c, 0, rt({1, 1})) == CoverDir::fixed);
  CHECK_THROWS_AS(cover_direction(c, 0, simple_root(2, 0)), PreconditionError);
}

TEST_CASE("depth agrees with breadth-first search from the simples") {
  for (const CartanData& c : {sftest::b2(), sftest::a3(), sftest::d4()}) {
    auto levels = positive_roots_by_depth(c, 6);
    for (size_t k = 0; k < levels.size(); ++k)
      for (const Root& r : levels[k]) CHECK(depth(c, r) == int(k));
  }
}

TEST_CASE("depth examples") {
  CartanData c = sftest::b2();
  CHECK(depth(c, simple_root(2, 0)) == 0);
  CHECK(depth(c, rt({2, 1})) == 1);
  CHECK(depth(sftest::rank6(), rt({3, 3, 2, 4, 2, 1})) == 10);

  CHECK_THROWS_AS(depth(c, rt({-1, 0})), PreconditionError);
  // Imaginary root of affine A1 has no down-cover.
  CartanData aff = validate({{2, -2}, {-2, 2}}, {1, 1}, 3, "a1-affine");
  CHECK_THROWS_AS(depth(aff, rt({1, 1})), PreconditionError);
}

TEST_CASE("greedy positive expressions replay to their root") {
  CartanData c = sftest::b2();
  PositiveExpression e = positive_expression(c, rt({1, 1}));
  CHECK(e.seed == 0);
  CHECK(e.steps == std::vector<int>{1});
  CHECK(verify_positive_expression(c, e));

  PositiveExpression trivial = positive_expression(c, simple_root(2, 0));
  CHECK(trivial.seed == 0);
  CHECK(trivial.steps.empty());

  PositiveExpression big = positive_expression(sftest::rank6(), rt({3, 3, 2, 4, 2, 1}));
  CHECK(big.length() == 10);
  CHECK(verify_positive_expression(sftest::rank6(), big));
}

TEST_CASE("expression length equals depth for all shallow roots") {
  for (const CartanData& c : {sftest::b2(), sftest::a3(), sftest::d4()}) {
    auto levels = positive_roots_by_depth(c, 8);
    for (size_t k = 0; k < levels.size(); ++k)
      for (const Root& r : levels[k]) {
        PositiveExpression e = positive_expression(c, r);
        CHECK(e.length() == int(k));
        CHECK(verify_positive_expression(c, e));
      }
  }
}

TEST_CASE("all-expressions variant contains the greedy one") {
  CartanData c = sftest::d4();
  Root beta = rt({2, 1, 1, 1});
  auto all = positive_expressions_all(c, beta, 64);
  CHECK(!all.empty());
  for (const auto& e : all) {
    CHECK(e.length() == depth(c, beta));
    CHECK(verify_positive_expression(c, e));
  }
}

TEST_CASE("inversions of words") {
  CartanData c = sftest::b2();
  auto inv = inversions(c, {0, 1});
  REQUIRE(inv.size() == 2);
  CHECK(inv[0] == simple_root(2, 0));
  CHECK(inv[1] == rt({2, 1}));

  CHECK(inversions(c, {1}).at(0) == simple_root(2, 1));
  CHECK_THROWS_AS(inversions(c, {0, 0}), ValidationError);
}

TEST_CASE("inversion involution on B2") {
  CartanData c = sftest::b2();
  Root t = rt({1, 1});
  CHECK(inversion_involution(c, t, simple_root(2, 1)) == rt({2, 1}));
  CHECK(inversion_involution(c, t, t) == t);
  Root once = inversion_involution(c, t, simple_root(2, 1));
  CHECK(inversion_involution(c, t, once) == simple_root(2, 1));
  // alpha_1 is orthogonal to t here, hence not an inversion.
  CHECK_THROWS_AS(inversion_involution(c, t, simple_root(2, 0)), PreconditionError);
}

TEST_CASE("reflection words are palindromic, reduced, and pair inversions") {
  for (const CartanData& c : {sftest::d4(), sftest::rank4(2, 2, 3)}) {
    auto levels = positive_roots_by_depth(c, 4);
    for (size_t k = 0; k < levels.size(); ++k)
      for (const Root& beta : levels[k]) {
        PositiveExpression e = positive_expression(c, beta);
        ReflectionWord w = reflection_word(e);
        REQUIRE(w.word.size() == 2 * size_t(k) + 1);
        auto inv = inversions(c, w.word);  // throws if not reduced
        CHECK(inv.size() == 2 * k + 1);
        std::set<IntVec> inv_set;
        for (const auto& g : inv) inv_set.insert(g.coords);
        CHECK(inv_set.size() == inv.size());
        for (const auto& g : inv) {
          Root other = inversion_involution(c, beta, g);
          CHECK(inv_set.count(other.coords) == 1);
        }
      }
  }
}

TEST_CASE("depth changes by exactly one under a non-fixing simple reflection") {
  CartanData c = sftest::d4();
  auto levels = positive_roots_by_depth(c, 5);
  for (size_t k = 0; k < levels.size(); ++k)
    for (const Root& r : levels[k])
      for (int i = 0; i < c.n; ++i) {
        Root s = reflect_root(c, i, r);
        if (s == r) continue;
        if (!is_positive(s)) continue;  // alpha_i itself
        int ds = depth(c, s);
        CHECK((ds == int(k) + 1 || ds == int(k) - 1));
      }
}
