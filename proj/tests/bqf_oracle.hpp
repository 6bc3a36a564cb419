#pragma once

// Test-only oracle: Gauss composition recomputed as multiplication of O_K-ideals
// written as Z-lattices, independent of the Dirichlet formulas in bqf.cpp.

#include <array>
#include <cstdlib>
#include <numeric>
#include <vector>

#include "tpl/bqf.hpp"

namespace tpl::oracle {

// Elements of O_K in "half coordinates": (x, y) <-> (x + y sqrt(D)) / 2.
using Half = std::array<i64, 2>;

inline Half half_mul(const Half& u, const Half& v, i64 D) {
  return {(u[0] * v[0] + u[1] * v[1] * D) / 2, (u[0] * v[1] + u[1] * v[0]) / 2};
}

// Hermite basis {(A, 0), (B, C)} of the Z-lattice spanned by gens.
inline std::array<i64, 3> hermite_2d(std::vector<Half> gens) {
  i64 C = 0, B = 0;
  // Column y: gcd via row operations.
  for (;;) {
    std::size_t pivot = gens.size();
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (gens[i][1] != 0 && (pivot == gens.size() || std::abs(gens[i][1]) < std::abs(gens[pivot][1]))) pivot = i;
    if (pivot == gens.size()) break;
    bool done = true;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (i == pivot || gens[i][1] == 0) continue;
      i64 q = gens[i][1] / gens[pivot][1];
      gens[i][0] -= q * gens[pivot][0];
      gens[i][1] -= q * gens[pivot][1];
      done = false;
    }
    if (done) {
      C = gens[pivot][1];
      B = gens[pivot][0];
      if (C < 0) {
        C = -C;
        B = -B;
      }
      gens.erase(gens.begin() + static_cast<long>(pivot));
      break;
    }
  }
  i64 A = 0;
  for (const auto& g : gens) A = std::gcd(A, g[0]);
  return {A, B, C};
}

inline QuadForm ideal_product_form(const QuadForm& f, const QuadForm& g) {
  const i64 D = f.discriminant();
  std::array<Half, 2> I{Half{2 * f.a, 0}, Half{-f.b, 1}};
  std::array<Half, 2> J{Half{2 * g.a, 0}, Half{-g.b, 1}};
  std::vector<Half> prods;
  for (const auto& u : I)
    for (const auto& v : J) prods.push_back(half_mul(u, v, D));
  auto [A, B, C] = hermite_2d(prods);
  // Lattice = C * [A', (-B' + sqrt D)/2]; A' = A / (2C), B' = -B / C.
  i64 a = A / (2 * C);
  i64 b = -B / C;
  b = ((b % (2 * a)) + 2 * a) % (2 * a);
  i64 c = (b * b - D) / (4 * a);
  return reduce({a, b, c});
}

}  // namespace tpl::oracle
