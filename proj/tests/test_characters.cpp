#include <random>
#include <set>

#include "doctest.h"
#include "tpl/characters.hpp"
#include "tpl/cyclo.hpp"
#include "tpl/finite_field.hpp"

using namespace tpl;

namespace {

// Brute-force oracle: every union of Frobenius orbits, checked for generation
// by closing under addition. Only feasible for few orbits.
i64 brute_force_min_stable(const AbelianGroup& G, i64 q) {
  const auto chars = character_group(G);
  const auto orbits = galois_orbits(G, chars, q);
  const std::size_t m = orbits.size();
  REQUIRE(m <= 20);
  i64 best = -1;
  for (u64 subset = 0; subset < (u64{1} << m); ++subset) {
    std::set<std::vector<i64>> span{std::vector<i64>(G.factors().size(), 0)};
    i64 size = 0;
    std::vector<std::vector<i64>> gens;
    for (std::size_t o = 0; o < m; ++o)
      if ((subset >> o) & 1) {
        size += static_cast<i64>(orbits[o].size());
        for (const auto& c : orbits[o]) gens.push_back(c.exponents);
      }
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<std::vector<i64>> current(span.begin(), span.end());
      for (const auto& x : current)
        for (const auto& g : gens) {
          std::vector<i64> s(x.size());
          for (std::size_t i = 0; i < s.size(); ++i) s[i] = mod(x[i] + g[i], G.factors()[i]);
          grew |= span.insert(s).second;
        }
    }
    if (static_cast<i64>(span.size()) == G.order() && (best < 0 || size < best)) best = size;
  }
  return best;
}

}  // namespace

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic_polynomial(1) == std::vector<i64>{-1, 1});
  CHECK(cyclotomic_polynomial(3) == std::vector<i64>{1, 1, 1});
  CHECK(cyclotomic_polynomial(4) == std::vector<i64>{1, 0, 1});
  CHECK(cyclotomic_polynomial(6) == std::vector<i64>{1, -1, 1});
  CHECK(cyclotomic_polynomial(12) == std::vector<i64>{1, 0, -1, 0, 1});
  // Phi_105 is the first with a coefficient of absolute value 2.
  const auto& p105 = cyclotomic_polynomial(105);
  CHECK(p105.size() == 49);
  CHECK(*std::min_element(p105.begin(), p105.end()) == -2);
}

TEST_CASE("field embedding construction") {
  SUBCASE("order 3 over F_7 is a cube root of unity in the prime field") {
    FieldEmbedding emb(7, 3);
    CHECK(emb.degree() == 1);
    // Oracle: roots of x^3 = 1, x != 1 in F_7.
    std::vector<i64> roots;
    for (i64 x = 2; x < 7; ++x)
      if (x * x * x % 7 == 1) roots.push_back(x);
    CHECK(roots == std::vector<i64>{2, 4});
    // Smallest x with x^2 of order 3 is x = 2, giving zeta = 4.
    CHECK(emb.zeta().c == std::vector<i64>{4});
    CHECK(FieldEmbedding(7, 3).zeta() == emb.zeta());
  }
  SUBCASE("order 5 over F_2 needs F_16") {
    FieldEmbedding emb(2, 5);
    CHECK(emb.degree() == 4);
    CHECK(emb.has_exact_order(emb.zeta(), 5));
    // Comparing c0 first, then c1, ...: x^4 + 1 = (x + 1)^4 fails and
    // x^4 + x^3 + 1 is the first irreducible.
    CHECK(emb.modulus() == std::vector<i64>{1, 0, 0, 1, 1});
  }
  SUBCASE("large degree") {
    FieldEmbedding emb(7, 47);  // ord_47(7) = 23
    CHECK(emb.degree() == 23);
    CHECK(emb.has_exact_order(emb.zeta(), 47));
    CHECK(fp_poly::is_irreducible(emb.modulus(), 7));
  }
  CHECK_THROWS_AS(FieldEmbedding(3, 6), PreconditionError);
  CHECK_THROWS_AS(FieldEmbedding(4, 3), PreconditionError);
}

TEST_CASE("field arithmetic") {
  FieldEmbedding emb(3, 8);  // F_9
  CHECK(emb.degree() == 2);
  std::mt19937_64 rng(11);
  for (int t = 0; t < 50; ++t) {
    FieldElem x{{static_cast<i64>(rng() % 3), static_cast<i64>(rng() % 3)}};
    if (emb.is_zero(x)) continue;
    CHECK(emb.mul(x, emb.inv(x)) == emb.one());
    CHECK(emb.pow(x, 8) == emb.one());
  }
  CHECK(emb.in_subfield(emb.from_int(2), 1));
  CHECK_FALSE(emb.in_subfield(emb.zeta(), 1));
}

TEST_CASE("character group") {
  CHECK(character_group(AbelianGroup(std::vector<i64>{})).size() == 1);
  auto c3 = character_group(AbelianGroup({3}));
  REQUIRE(c3.size() == 3);
  CHECK(c3[0].exponents == std::vector<i64>{0});
  CHECK(c3[1].exponents == std::vector<i64>{1});
  CHECK(c3[2].exponents == std::vector<i64>{2});
  AbelianGroup v4({2, 2});
  auto c4 = character_group(v4);
  CHECK(c4.size() == 4);
  for (const auto& chi : c4) CHECK(character_order(v4, chi) <= 2);
}

TEST_CASE("eval_char") {
  AbelianGroup triv(std::vector<i64>{});
  FieldEmbedding e1(7, 1);
  auto [exact, img] = eval_char(triv, Character{{}}, {}, e1);
  i64 v;
  CHECK(exact.as_integer(v));
  CHECK(v == 1);
  CHECK(img == e1.one());

  AbelianGroup z3({3});
  FieldEmbedding e7(7, 3);
  auto [x3, y3] = eval_char(z3, Character{{1}}, {1}, e7);
  CHECK(e7.pow(y3, 3) == e7.one());
  CHECK(y3 != e7.one());
  CHECK(x3.reduce(e7) == y3);

  AbelianGroup z5({5});
  FieldEmbedding e2(2, 5);
  auto [x5, y5] = eval_char(z5, Character{{1}}, {1}, e2);
  CHECK(e2.has_exact_order(y5, 5));
  CHECK(x5.reduce(e2) == y5);
}

TEST_CASE("cyclotomic reduction is a ring homomorphism") {
  std::mt19937_64 rng(2024);
  const std::vector<std::pair<i64, i64>> cases{{7, 3}, {7, 15}, {2, 5}, {3, 20}, {11, 12}, {5, 21}, {13, 9}};
  int trials = 0;
  for (int t = 0; t < 1000; ++t) {
    auto [p, n] = cases[static_cast<std::size_t>(t) % cases.size()];
    static std::map<std::pair<i64, i64>, FieldEmbedding> embs;
    auto it = embs.find({p, n});
    if (it == embs.end()) it = embs.emplace(std::make_pair(p, n), FieldEmbedding(p, n)).first;
    const FieldEmbedding& emb = it->second;
    std::vector<i64> a(static_cast<std::size_t>(n)), b(static_cast<std::size_t>(n));
    for (auto& x : a) x = static_cast<i64>(rng() % 21) - 10;
    for (auto& x : b) x = static_cast<i64>(rng() % 21) - 10;
    CycloInt A = CycloInt::from_group_ring(n, a), B = CycloInt::from_group_ring(n, b);
    REQUIRE((A * B).reduce(emb) == emb.mul(A.reduce(emb), B.reduce(emb)));
    REQUIRE((A + B).reduce(emb) == emb.add(A.reduce(emb), B.reduce(emb)));
    ++trials;
  }
  CHECK(trials == 1000);
}

TEST_CASE("fourier transform") {
  SUBCASE("constant function") {
    AbelianGroup G({3, 3});
    FieldEmbedding emb(7, 3);
    std::vector<FieldElem> f(9, emb.from_int(5));
    auto P = fourier(G, f, emb);
    CHECK(P[0] == emb.from_int(5));
    for (std::size_t i = 1; i < P.size(); ++i) CHECK(emb.is_zero(P[i]));
  }
  SUBCASE("indicator of identity") {
    AbelianGroup G({3});
    FieldEmbedding emb(7, 3);
    std::vector<FieldElem> f{emb.one(), emb.zero(), emb.zero()};
    auto P = fourier(G, f, emb);
    for (const auto& v : P) CHECK(v == emb.from_int(5));  // 3^-1 = 5 mod 7
  }
  SUBCASE("p dividing |G| is rejected") {
    // p | |G| implies p | exponent, so the embedding itself cannot be built.
    CHECK_THROWS_AS(FieldEmbedding(3, 6), PreconditionError);
    AbelianGroup G({3});
    FieldEmbedding wrong(7, 1);
    CHECK_THROWS_AS(fourier(G, std::vector<FieldElem>(3, wrong.one()), wrong), PreconditionError);
  }
  SUBCASE("random roundtrips") {
    std::mt19937_64 rng(99);
    const auto primes = primes_up_to(50);
    int done = 0;
    for (int t = 0; done < 100 && t < 10000; ++t) {
      const i64 order = 1 + static_cast<i64>(rng() % 200);
      auto groups = abelian_groups_of_order(order);
      const auto& factors = groups[rng() % groups.size()];
      const i64 p = primes[rng() % primes.size()];
      if (order % p == 0) continue;
      AbelianGroup G(factors);
      if (multiplicative_order(p, G.exponent()) > 12) continue;  // keeps the test quick
      FieldEmbedding emb(p, G.exponent());
      std::vector<FieldElem> f;
      for (i64 i = 0; i < order; ++i) {
        FieldElem x = emb.zero();
        for (auto& c : x.c) c = static_cast<i64>(rng() % static_cast<u64>(p));
        f.push_back(x);
      }
      REQUIRE(inverse_fourier(G, fourier(G, f, emb), emb) == f);
      ++done;
    }
    CHECK(done == 100);
  }
}

TEST_CASE("galois orbits") {
  AbelianGroup z5({5});
  auto orbits5 = galois_orbits(z5, character_group(z5), 2);
  REQUIRE(orbits5.size() == 2);
  CHECK(orbits5[0].size() == 1);  // trivial character
  CHECK(orbits5[1].size() == 4);

  AbelianGroup z3({3});
  auto orbits3 = galois_orbits(z3, character_group(z3), 7);
  CHECK(orbits3.size() == 3);

  AbelianGroup g({4, 12});
  auto chars = character_group(g);
  for (const auto& orb : galois_orbits(g, chars, 5)) {
    std::set<Character> s(orb.begin(), orb.end());
    CHECK(static_cast<i64>(orb.size()) == multiplicative_order(5, character_order(g, orb[0])));
    for (const auto& c : orb) CHECK(s.count(character_power(g, c, 5)) == 1);
  }
  CHECK_THROWS_AS(galois_orbits(AbelianGroup({6}), character_group(AbelianGroup({6})), 3), PreconditionError);
}

TEST_CASE("stability bound examples") {
  CHECK(stability_bound({5}, 2).exact == 4);
  CHECK(stability_bound({}, 2).exact == 0);
  auto b = stability_bound({3, 3}, 7);
  CHECK(b.exact == 2);
  CHECK(b.weaker == Rational(4, 3));
  CHECK_THROWS_AS(stability_bound({4}, 2), PreconditionError);
}

TEST_CASE("minimal stable generating sets") {
  CHECK(min_stable_generating_size(AbelianGroup({5}), 2).size == 4);
  CHECK(min_stable_generating_size(AbelianGroup(std::vector<i64>{}), 3).size == 0);
  auto v4 = min_stable_generating_size(AbelianGroup({2, 2}), 3);
  CHECK(v4.size == 2);
  CHECK(v4.witness.size() == 2);
  CHECK_THROWS_AS(min_stable_generating_size(AbelianGroup({5, 13}), 2), PreconditionError);
}

TEST_CASE("shortest-path search matches brute force over orbit subsets") {
  for (i64 n = 1; n <= 24; ++n)
    for (const auto& factors : abelian_groups_of_order(n))
      for (i64 q : {2, 3, 5, 7}) {
        if (gcd(q, n) != 1) continue;
        AbelianGroup G(factors);
        if (galois_orbits(G, character_group(G), q).size() > 16) continue;
        auto fast = min_stable_generating_size(G, q);
        CAPTURE(n);
        CAPTURE(q);
        REQUIRE(fast.size == brute_force_min_stable(G, q));
        REQUIRE(static_cast<i64>(fast.witness.size()) == fast.size);
      }
}

TEST_CASE("invariant-factor bound is not a lower bound for Z/21 over F_2") {
  // Orbits of sizes 2 (order 3) and 3 (order 7) generate, while ord_21(2) = 6.
  AbelianGroup G({21});
  CHECK(min_stable_generating_size(G, 2).size == 5);
  CHECK(stability_bound({21}, 2).exact == 6);
}

TEST_CASE("abelian groups of order n") {
  CHECK(abelian_groups_of_order(1) == std::vector<std::vector<i64>>{{}});
  CHECK(abelian_groups_of_order(8).size() == 3);
  CHECK(abelian_groups_of_order(36).size() == 4);
  CHECK(abelian_groups_of_order(16).size() == 5);
}
