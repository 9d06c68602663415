#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "shardforge/cone.hpp"
#include "test_helpers.hpp"

using namespace shardforge;
using sftest::rt;

namespace {

BigVec bv(std::vector<long long> v) {
  BigVec r;
  for (auto x : v) r.push_back(x);
  return r;
}

Cone random_cone(std::mt19937& rng, int n) {
  std::uniform_int_distribution<int> coord(-3, 3);
  std::uniform_int_distribution<int> n_ineq(0, 5), n_eq(0, 1);
  std::vector<BigVec> eqs, ineqs;
  int ne = n_eq(rng), ni = n_ineq(rng);
  for (int k = 0; k < ne; ++k) {
    BigVec v(size_t(n), BigInt(0));
    for (int j = 0; j < n; ++j) v[size_t(j)] = coord(rng);
    eqs.push_back(v);
  }
  for (int k = 0; k < ni; ++k) {
    BigVec v(size_t(n), BigInt(0));
    for (int j = 0; j < n; ++j) v[size_t(j)] = coord(rng);
    ineqs.push_back(v);
  }
  return Cone(n, eqs, ineqs);
}

}  // namespace

TEST_CASE("hyperplane dimensions") {
  CHECK(hyperplane(simple_root(2, 0)).dimension() == 1);
  CHECK(hyperplane(rt({1, 1, 1, 1})).dimension() == 3);
  CHECK(hyperplane(rt({3, 3, 2, 4, 2, 1})).dimension() == 5);
  CHECK_THROWS_AS(hyperplane(rt({0, 0})), ValidationError);

  // B2: alpha_1-perp is the omega_2 axis.
  VRep v = hyperplane(simple_root(2, 0)).vrep();
  REQUIRE(v.lineality.size() == 1);
  CHECK(v.lineality[0] == bv({0, 1}));
  CHECK(v.rays.empty());
}

TEST_CASE("double description on tiny fixed examples") {
  // Positive quadrant.
  Cone quad(2, {}, {bv({1, 0}), bv({0, 1})});
  const VRep& v = quad.vrep();
  CHECK(v.lineality.empty());
  REQUIRE(v.rays.size() == 2);
  CHECK(v.rays[0] == bv({0, 1}));
  CHECK(v.rays[1] == bv({1, 0}));
  CHECK(v.dim == 2);

  // One equality and one inequality in the plane.
  Cone slice(2, {bv({1, 1})}, {bv({0, 1})});
  const VRep& s = slice.vrep();
  CHECK(s.lineality.empty());
  REQUIRE(s.rays.size() == 1);
  CHECK(s.rays[0] == bv({-1, 1}));

  // No constraints: the full plane.
  Cone full = Cone::full_space(2);
  CHECK(full.dimension() == 2);
  CHECK(full.vrep().lineality.size() == 2);
  CHECK(full.vrep().rays.empty());

  // Origin only.
  Cone zero(2, {bv({1, 0}), bv({0, 1})}, {});
  CHECK(zero.dimension() == 0);
}

TEST_CASE("sigma on B2 hyperplanes") {
  CartanData c = sftest::b2();
  Cone s1 = sigma(c, 0, +1, hyperplane(simple_root(2, 1)));
  REQUIRE(s1.vrep().rays.size() == 1);
  CHECK(s1.vrep().rays[0] == bv({-1, 2}));
  CHECK(s1.dimension() == 1);

  Cone s2 = sigma(c, 1, +1, hyperplane(simple_root(2, 0)));
  REQUIRE(s2.vrep().rays.size() == 1);
  CHECK(s2.vrep().rays[0] == bv({1, -1}));
}

TEST_CASE("D4: wrong sign collapses the same-sign octant to the origin") {
  CartanData c = sftest::d4();
  Root beta1 = rt({1, 1, 1, 1});
  Cone octant = hyperplane(beta1).intersected(
      {}, {bv({0, 1, 0, 0}), bv({0, 0, 1, 0}), bv({0, 0, 0, 1})});
  REQUIRE(octant.dimension() == 3);
  CHECK(sigma(c, 0, +1, octant).dimension() == 0);
  CHECK(sigma(c, 0, -1, octant).dimension() == 3);
}

TEST_CASE("equality is insensitive to redundancy, order, and ray scaling") {
  Cone a(2, {}, {bv({1, 0}), bv({0, 1})});
  Cone b(2, {}, {bv({0, 1}), bv({1, 0}), bv({1, 1}), bv({2, 2})});
  CHECK(equal(a, b));

  Cone r1 = cone_from_generators(2, {}, {bv({-1, 2})});
  Cone r2 = cone_from_generators(2, {}, {bv({-2, 4})});
  CHECK(equal(r1, r2));
  CHECK(r1.dimension() == 1);
}

TEST_CASE("sigma: intersect-then-reflect equals reflect-then-intersect-flipped") {
  std::mt19937 rng(7771);
  int checked = 0;
  for (const CartanData& c : {sftest::b2(), sftest::a3(), sftest::d4()}) {
    for (int trial = 0; trial < 70; ++trial) {
      Cone K = random_cone(rng, c.n);
      int i = int(rng() % unsigned(c.n));
      int sign = (rng() & 1u) ? +1 : -1;
      Cone lhs = sigma(c, i, sign, K);
      BigVec flipped(size_t(c.n), 0);
      flipped[size_t(i)] = sign >= 0 ? -1 : 1;
      Cone rhs = K.reflected(c, i).intersected({}, {flipped});
      CHECK(equal(lhs, rhs));
      CHECK(lhs.dimension() <= K.dimension());
      ++checked;
    }
  }
  CHECK(checked >= 200);
}

TEST_CASE("facet enumeration round-trips through double description") {
  std::mt19937 rng(99123);
  for (int n : {2, 3, 4}) {
    for (int trial = 0; trial < 40; ++trial) {
      Cone K = random_cone(rng, n);
      auto [eqs, ineqs] = K.facet_enumeration();
      Cone back(n, eqs, ineqs);
      CHECK(equal(K, back));

      Cone regen = cone_from_generators(n, K.vrep().lineality, K.vrep().rays);
      CHECK(equal(K, regen));
    }
  }
}

TEST_CASE("containment checks") {
  Cone quad(2, {}, {bv({1, 0}), bv({0, 1})});
  Cone ray = cone_from_generators(2, {}, {bv({1, 1})});
  CHECK(quad.contains_cone(ray));
  CHECK(!ray.contains_cone(quad));
  CHECK(quad.contains_point(bv({3, 5})));
  CHECK(!quad.contains_point(bv({-1, 5})));
}
