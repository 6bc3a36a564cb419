#include <random>

#include "bqf_oracle.hpp"
#include "doctest.h"
#include "tpl/bqf.hpp"

using namespace tpl;

TEST_CASE("discriminant validation") {
  CHECK_NOTHROW(Discriminant(-23));
  CHECK_NOTHROW(Discriminant(-4));
  CHECK_NOTHROW(Discriminant(-84));
  CHECK_THROWS_AS(Discriminant(-12), PreconditionError);  // 4 * -3, -3 = 1 mod 4
  CHECK_THROWS_AS(Discriminant(-27), PreconditionError);
  CHECK_THROWS_AS(Discriminant(-5), PreconditionError);   // 3 mod 4
  CHECK_THROWS_AS(Discriminant(5), PreconditionError);
}

TEST_CASE("reduced forms for small discriminants") {
  auto f23 = enumerate_reduced_forms(Discriminant(-23));
  REQUIRE(f23.size() == 3);
  CHECK(f23[0] == QuadForm{1, 1, 6});
  CHECK(f23[1] == QuadForm{2, -1, 3});
  CHECK(f23[2] == QuadForm{2, 1, 3});

  auto f4 = enumerate_reduced_forms(Discriminant(-4));
  REQUIRE(f4.size() == 1);
  CHECK(f4[0] == QuadForm{1, 0, 1});

  auto f7 = enumerate_reduced_forms(Discriminant(-7));
  REQUIRE(f7.size() == 1);
  CHECK(f7[0] == QuadForm{1, 1, 2});
}

TEST_CASE("composition at D = -23") {
  const QuadForm one{1, 1, 6}, g{2, 1, 3}, ginv{2, -1, 3};
  CHECK(compose(one, g) == g);
  CHECK(compose(g, ginv) == one);
  CHECK(compose(g, g) == ginv);
  CHECK(oracle::ideal_product_form(g, g) == ginv);
  CHECK_THROWS_AS(compose(g, QuadForm{1, 0, 1}), PreconditionError);
}

TEST_CASE("composition agrees with ideal multiplication") {
  for (i64 d = -3; d >= -400; --d) {
    if (!is_fundamental_discriminant(d)) continue;
    auto forms = enumerate_reduced_forms(Discriminant(d));
    for (const auto& f : forms)
      for (const auto& g : forms) REQUIRE(compose(f, g) == oracle::ideal_product_form(f, g));
  }
}

TEST_CASE("class group structure examples") {
  ClassGroup g23(Discriminant(-23));
  CHECK(g23.order() == 3);
  REQUIRE(g23.factors().size() == 1);
  CHECK(g23.factors()[0].order == 3);
  CHECK(g23.factors()[0].generator == QuadForm{2, -1, 3});

  ClassGroup g4(Discriminant(-4));
  CHECK(g4.order() == 1);
  CHECK(g4.factors().empty());
  CHECK(g4.exponent() == 1);

  ClassGroup g84(Discriminant(-84));
  CHECK(g84.invariant_factors() == std::vector<i64>{2, 2});
  for (std::size_t x = 0; x < 4; ++x) CHECK(g84.multiply(x, x) == g84.identity());

  // Non-cyclic with unequal factors: D = -260 has Cl = Z/2 x Z/4.
  ClassGroup g260(Discriminant(-260));
  CHECK(g260.invariant_factors() == std::vector<i64>{2, 4});
}

TEST_CASE("encode/decode roundtrip and factor independence") {
  for (i64 d = -3; d >= -1500; --d) {
    if (!is_fundamental_discriminant(d)) continue;
    ClassGroup G{Discriminant(d)};
    i64 prod = 1;
    for (const auto& f : G.factors()) {
      prod *= f.order;
      CHECK(power(f.generator, f.order) == principal_form(G.discriminant()));
    }
    REQUIRE(prod == G.order());
    for (std::size_t x = 0; x < G.elements().size(); ++x) REQUIRE(G.decode(G.encode(x)) == x);
  }
}

TEST_CASE("non-reduced representatives reduce into the same class") {
  std::mt19937_64 rng(7);
  ClassGroup G{Discriminant(-299)};
  for (const auto& f : G.elements()) {
    for (int trial = 0; trial < 10; ++trial) {
      // Apply x -> x + t y, then swap; keeps the class (up to orientation-preserving maps).
      i64 t = static_cast<i64>(rng() % 7) - 3;
      QuadForm g{f.a, f.b + 2 * f.a * t, f.a * t * t + f.b * t + f.c};
      QuadForm s{g.c, -g.b, g.a};
      CHECK(reduce(g) == f);
      CHECK(reduce(s) == f);
    }
  }
}
