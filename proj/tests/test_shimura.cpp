#include "doctest.h"

#include <cmath>
#include <random>

#include "tpl/shimura.hpp"

using namespace tpl;

namespace {

// Brute-force count of x with x^T G x = 2n, over a box from the inverse Gram diagonal.
i64 box_count(const IntMatrix& G, i64 n) {
  double inv[4][4], a[4][8];
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 8; ++j) a[i][j] = j < 4 ? static_cast<double>(G[i][j]) : (j - 4 == i ? 1.0 : 0.0);
  for (int c = 0; c < 4; ++c) {
    int piv = c;
    for (int r = c + 1; r < 4; ++r)
      if (std::fabs(a[r][c]) > std::fabs(a[piv][c])) piv = r;
    for (int j = 0; j < 8; ++j) std::swap(a[c][j], a[piv][j]);
    for (int r = 0; r < 4; ++r) {
      if (r == c) continue;
      const double f = a[r][c] / a[c][c];
      for (int j = 0; j < 8; ++j) a[r][j] -= f * a[c][j];
    }
  }
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) inv[i][j] = a[i][j + 4] / a[i][i];
  i64 R[4];
  for (int i = 0; i < 4; ++i) R[i] = static_cast<i64>(std::ceil(std::sqrt(2.0 * n * inv[i][i]))) + 1;
  i64 count = 0;
  std::vector<i64> x(4);
  for (x[0] = -R[0]; x[0] <= R[0]; ++x[0])
    for (x[1] = -R[1]; x[1] <= R[1]; ++x[1])
      for (x[2] = -R[2]; x[2] <= R[2]; ++x[2])
        for (x[3] = -R[3]; x[3] <= R[3]; ++x[3]) {
          i64 v = 0;
          for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) v += G[i][j] * x[i] * x[j];
          if (v == 2 * n) ++count;
        }
  return count;
}

const ShimuraSet& shimura(i64 q) {
  static std::map<i64, ShimuraSet> cache;
  auto it = cache.find(q);
  if (it == cache.end()) it = cache.emplace(q, right_ideal_classes(maximal_order(build_algebra(q)))).first;
  return it->second;
}

}  // namespace

TEST_CASE("hilbert symbols satisfy the product formula") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<i64> dist(-60, 60);
  for (int t = 0; t < 300; ++t) {
    i64 a = dist(rng), b = dist(rng);
    if (a == 0 || b == 0) continue;
    int prod = hilbert_symbol(a, b, -1);
    for (i64 p : prime_divisors(2 * a * b)) prod *= hilbert_symbol(a, b, p);
    CHECK(prod == 1);
  }
  CHECK(hilbert_symbol(-1, -1, 2) == -1);
  CHECK(hilbert_symbol(-1, -1, 3) == 1);
  CHECK(hilbert_symbol(2, 3, 3) == -1);
}

TEST_CASE("build_algebra examples") {
  auto A11 = build_algebra(11);
  CHECK(A11.a == -1);
  CHECK(A11.b == -11);
  auto A5 = build_algebra(5);
  CHECK(A5.a == -2);
  auto A17 = build_algebra(17);
  CHECK(A17.a == -3);
  CHECK(A17.b == -17);
  auto A2 = build_algebra(2);
  CHECK(A2.a == -1);
  CHECK(A2.b == -1);
  CHECK_THROWS_AS(build_algebra(15), PreconditionError);
  for (i64 q : primes_up_to(400)) {
    auto A = build_algebra(q);
    CHECK(A.ramified_primes() == std::vector<i64>{q});
    CHECK(A.is_definite());
  }
}

TEST_CASE("lattice basics") {
  auto A = build_algebra(11);
  const Rational h(1, 2);
  Lattice L = Lattice::from_generators({Quat::scalar(1), Quat{{0, 1, 0, 0}}, Quat{{h, 0, h, 0}}, Quat{{0, h, 0, h}},
                                        Quat{{1, 1, 1, 1}}});
  Lattice M = Lattice::from_generators({Quat{{0, h, 0, h}}, Quat{{h, 0, h, 0}}, Quat{{0, 1, 0, 0}}, Quat::scalar(1)});
  CHECK(L == M);
  CHECK(L.contains(Quat{{0, 0, 1, 0}}));
  CHECK_FALSE(L.contains(Quat{{h, 0, 0, 0}}));
  CHECK(L.covolume() == Rational(1, 4));
  CHECK_THROWS_AS(Lattice::from_generators({Quat::scalar(1), Quat{{0, 1, 0, 0}}, Quat{{1, 1, 0, 0}}}),
                  CertificationError);
  Quat x{{1, 2, Rational(1, 3), -1}};
  CHECK(multiply(A, x, x.conj()) == Quat::scalar(nrd(A, x)));
}

TEST_CASE("short vector enumeration matches a box search") {
  IntMatrix G{{2, 1, 0, 0}, {1, 4, 1, 0}, {0, 1, 6, 2}, {0, 0, 2, 8}};
  auto theta = theta_series(G, 12);
  for (i64 n = 1; n <= 12; ++n) CHECK(theta[static_cast<std::size_t>(n)] == box_count(G, n));
  i64 visits = 0;
  enumerate_short_vectors(G, 24, [&](const std::vector<i64>&, i64) { return ++visits < 3; });
  CHECK(visits == 3);
}

TEST_CASE("maximal orders") {
  auto O11 = maximal_order(build_algebra(11));
  const Rational h(1, 2);
  CHECK(O11.lattice.contains(Quat{{h, 0, h, 0}}));
  CHECK(O11.lattice.contains(Quat{{0, h, 0, h}}));
  CHECK(reduced_discriminant(O11.A, O11.lattice) == Rational(11));
  for (i64 q : primes_up_to(300)) {
    auto O = maximal_order(build_algebra(q));
    CHECK(is_order(O.A, O.lattice));
    CHECK(reduced_discriminant(O.A, O.lattice) == Rational(q));
    for (const auto& x : O.lattice.basis())
      for (const auto& y : O.lattice.basis()) CHECK(O.lattice.contains(multiply(O.A, x, y)));
  }
}

TEST_CASE("saturation reaches a maximal order from Z<1,i,j,k>") {
  for (i64 q : {3, 5, 11, 13, 17, 41}) {
    auto A = build_algebra(q);
    Lattice L = saturate(A, Lattice::from_generators({Quat::scalar(1), Quat{{0, 1, 0, 0}}, Quat{{0, 0, 1, 0}},
                                                       Quat{{0, 0, 0, 1}}}));
    CHECK(is_order(A, L));
    CHECK(reduced_discriminant(A, L) == Rational(q));
  }
}

TEST_CASE("class sets and the mass formula") {
  const auto& X11 = shimura(11);
  CHECK(X11.size() == 2);
  std::vector<i64> w = X11.weights;
  std::sort(w.begin(), w.end());
  CHECK(w == std::vector<i64>{2, 3});
  CHECK_FALSE(is_isomorphic(X11.order, X11.classes[0], X11.classes[1]));

  const auto& X3 = shimura(3);
  CHECK(X3.size() == 1);
  CHECK(X3.weights == std::vector<i64>{6});

  const auto& X2 = shimura(2);  // Hurwitz order, 24 units
  CHECK(X2.size() == 1);
  CHECK(X2.weights == std::vector<i64>{12});

  for (i64 q : {5, 7, 13, 17, 19, 23, 37, 41, 61}) {
    const auto& X = shimura(q);
    CHECK(X.mass() == Rational(q - 1, 24));
    for (std::size_t i = 0; i < X.size(); ++i)
      for (std::size_t j = i + 1; j < X.size(); ++j) CHECK_FALSE(is_isomorphic(X.order, X.classes[i], X.classes[j]));
  }
}

TEST_CASE("is_isomorphic on scaled and reduced ideals") {
  const auto& X = shimura(37);
  const auto& O = X.order;
  CHECK(is_isomorphic(O, unit_ideal(O), unit_ideal(O)));
  for (const auto& I : X.classes) {
    CHECK(is_isomorphic(O, I, I));
    for (const auto& J : neighbors(O, I, 3)) {
      CHECK(is_isomorphic(O, J, reduce_ideal(O, J)));
      const Quat g{{1, 2, -1, 3}};
      std::vector<Quat> gens;
      for (const auto& b : J.lattice.basis()) gens.push_back(multiply(O.A, g, b));
      Lattice L = Lattice::from_generators(gens);
      CHECK(is_isomorphic(O, J, RightIdeal{L, ideal_norm(O, L)}));
    }
  }
  auto nb = neighbors(O, unit_ideal(O), 5);
  CHECK(nb.size() == 6);
  CHECK_THROWS_AS(neighbors(O, unit_ideal(O), 37), PreconditionError);
}

TEST_CASE("brandt matrices for q = 11") {
  const auto& X = shimura(11);
  auto B1 = brandt_matrix(X, 1);
  CHECK(B1.entries == std::vector<std::vector<i64>>{{1, 0}, {0, 1}});
  auto B2 = brandt_matrix(X, 2);
  for (const auto& row : B2.entries) CHECK(row[0] + row[1] == 3);
  auto B3 = brandt_matrix(X, 3);
  CHECK(mat_mul(B2.entries, B3.entries) == mat_mul(B3.entries, B2.entries));
  // The class with four units is O itself; B(2) is then [[1,2],[3,0]].
  CHECK(X.weights[0] == 2);
  CHECK(B2.entries == std::vector<std::vector<i64>>{{1, 2}, {3, 0}});
}

TEST_CASE("brandt invariants") {
  for (i64 q : {11, 17, 19, 37}) {
    const auto& X = shimura(q);
    const auto Bs = brandt_matrices(X, 40);
    const std::size_t H = X.size();
    for (i64 n = 1; n <= 20; ++n) {
      if (n % q == 0) continue;
      const auto& B = Bs[static_cast<std::size_t>(n - 1)].entries;
      for (std::size_t i = 0; i < H; ++i) {
        i64 s = 0;
        for (std::size_t j = 0; j < H; ++j) {
          s += B[i][j];
          CHECK(X.weights[j] * B[i][j] == X.weights[i] * B[j][i]);
        }
        CHECK(s == sigma1(n));
      }
    }
    for (i64 m = 2; m <= 6; ++m)
      for (i64 n = 2; n <= 6; ++n) {
        const auto& Bm = Bs[static_cast<std::size_t>(m - 1)].entries;
        const auto& Bn = Bs[static_cast<std::size_t>(n - 1)].entries;
        CHECK(mat_mul(Bm, Bn) == mat_mul(Bn, Bm));
        if (gcd(m, n) == 1 && m * n <= 40) CHECK(mat_mul(Bm, Bn) == Bs[static_cast<std::size_t>(m * n - 1)].entries);
      }
  }
}

TEST_CASE("diagonal brandt entries count elements of the left order") {
  for (i64 q : {11, 19}) {
    const auto& X = shimura(q);
    const auto Bs = brandt_matrices(X, 10);
    for (std::size_t j = 0; j < X.size(); ++j) {
      const Lattice Ol = left_order(X.order, X.classes[j]);
      const IntMatrix G = integral_gram(Ol.gram(X.order.A), 1);
      for (i64 n = 1; n <= 10; ++n)
        CHECK(2 * X.weights[j] * Bs[static_cast<std::size_t>(n - 1)].entries[j][j] == box_count(G, n));
    }
  }
}

TEST_CASE("eigenform for q = 11") {
  const auto& X = shimura(11);
  auto B2 = brandt_matrix(X, 2);
  CHECK(eigenspace_dimension(B2, -2) == 1);
  auto f = eigenform(X, {{2, -2}, {3, -1}, {5, 1}, {7, -2}}, 7);
  CHECK(f.coords == std::vector<i64>{2, -3});
  CHECK(mod(f.coords[0], 7) != mod(f.coords[1], 7));
  CHECK_THROWS_AS(eigenform(X, {{2, 3}, {3, 4}}, 7), CertificationError);  // Eisenstein, not cuspidal
  CHECK_THROWS_AS(eigenform(X, {{2, 1}}, 7), CertificationError);           // not an eigenvalue
}

TEST_CASE("integer kernel") {
  std::vector<std::vector<Rational>> M{{1, 2, 3}, {2, 4, 6}};
  auto K = integer_kernel(M);
  CHECK(K.size() == 2);
  for (const auto& v : K) CHECK(v[0] + 2 * v[1] + 3 * v[2] == 0);
}

TEST_CASE("tau action is an involution") {
  for (i64 q : {3, 11, 13, 37, 43}) {
    const auto& X = shimura(q);
    auto perm = tau_action(X);
    CHECK(perm.size() == X.size());
    for (std::size_t i = 0; i < perm.size(); ++i) CHECK(perm[perm[i]] == i);
    // P is two-sided, so the class of O is fixed.
    CHECK(perm[0] == 0);
  }
}
