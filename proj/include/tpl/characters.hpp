#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "tpl/arith.hpp"
#include "tpl/cyclo.hpp"
#include "tpl/finite_field.hpp"

namespace tpl {

/// Finite abelian group Z/n_1 x ... x Z/n_d given by its cyclic factors.
/// Elements are exponent vectors; index order is an odometer with the
/// first coordinate varying fastest.
class AbelianGroup {
 public:
  AbelianGroup() = default;
  explicit AbelianGroup(std::vector<i64> factors);

  const std::vector<i64>& factors() const { return factors_; }
  i64 order() const { return order_; }
  i64 exponent() const { return exponent_; }
  std::vector<i64> element(std::size_t index) const;
  std::size_t index(const std::vector<i64>& coords) const;
  std::vector<std::vector<i64>> elements() const;
  /// Order of the element with the given coordinates.
  i64 element_order(const std::vector<i64>& coords) const;

 private:
  std::vector<i64> factors_;
  i64 order_ = 1;
  i64 exponent_ = 1;
};

/// Character sigma -> zeta_n^(sum_i e_i s_i n / n_i) with n the group exponent.
struct Character {
  std::vector<i64> exponents;
  friend auto operator<=>(const Character&, const Character&) = default;
};

/// All |G| characters in the same odometer order as the group elements.
std::vector<Character> character_group(const AbelianGroup& G);

/// Exponent of zeta_n in chi(sigma).
i64 character_exponent(const AbelianGroup& G, const Character& chi, const std::vector<i64>& sigma);
i64 character_order(const AbelianGroup& G, const Character& chi);
Character character_power(const AbelianGroup& G, const Character& chi, i64 k);

/// chi(sigma) exactly in Z[zeta_n] and in F_{p^k}; the second is the
/// reduction of the first. Requires emb.n() == G.exponent().
std::pair<CycloInt, FieldElem> eval_char(const AbelianGroup& G, const Character& chi,
                                         const std::vector<i64>& sigma, const FieldEmbedding& emb);

/// P(chi) = |G|^-1 sum_sigma chi(sigma)^-1 f(sigma), indexed like character_group(G).
/// fvals is indexed like G's elements. Throws PreconditionError if p | |G|.
std::vector<FieldElem> fourier(const AbelianGroup& G, const std::vector<FieldElem>& fvals,
                               const FieldEmbedding& emb);
/// f(sigma) = sum_chi P(chi) chi(sigma).
std::vector<FieldElem> inverse_fourier(const AbelianGroup& G, const std::vector<FieldElem>& coeffs,
                                       const FieldEmbedding& emb);

/// Orbits of chi -> chi^q0, each sorted, listed by their smallest member.
std::vector<std::vector<Character>> galois_orbits(const AbelianGroup& G, const std::vector<Character>& chars,
                                                  i64 q0);

struct StabilityBound {
  i64 exact = 0;      // sum_i [F_q(mu_{n_i}) : F_q]
  Rational weaker{};  // sum_i phi(n_i) / gcd(n_i, q - 1)
};

/// Lower bound for a Galois-stable generating subset of the dual of
/// Z/n_1 x ... x Z/n_d over F_q. Factors equal to 1 contribute nothing.
StabilityBound stability_bound(const std::vector<i64>& divisors, i64 q);

struct StableGeneratingSet {
  i64 size = 0;
  std::vector<Character> witness;
};

/// Minimum size of a subset of the dual group that is closed under
/// chi -> chi^q and generates it. Exhaustive over unions of Frobenius
/// orbits (shortest path over the subgroup lattice).
StableGeneratingSet min_stable_generating_size(const AbelianGroup& G, i64 q, i64 max_order = 64);

/// All abelian groups of order n, as invariant factor lists n_1 | n_2 | ...
std::vector<std::vector<i64>> abelian_groups_of_order(i64 n);

}  // namespace tpl
