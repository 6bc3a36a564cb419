#pragma once

#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "tpl/arith.hpp"

namespace tpl {

using BigInt = boost::multiprecision::cpp_int;

/// Element of F_{p^k} as coefficients (low to high) of a polynomial of
/// degree < k over F_p.
struct FieldElem {
  std::vector<i64> c;
  friend bool operator==(const FieldElem&, const FieldElem&) = default;
};

// Dense polynomials over F_p, coefficients low to high, no trailing zeros.
namespace fp_poly {
using Poly = std::vector<i64>;
void trim(Poly& f);
Poly add(const Poly& f, const Poly& g, i64 p);
Poly sub(const Poly& f, const Poly& g, i64 p);
Poly mul(const Poly& f, const Poly& g, i64 p);
Poly rem(const Poly& f, const Poly& g, i64 p);
Poly gcd(Poly f, Poly g, i64 p);
Poly mulmod(const Poly& f, const Poly& g, const Poly& m, i64 p);
Poly powmod(Poly base, const BigInt& e, const Poly& m, i64 p);
/// Rabin's test.
bool is_irreducible(const Poly& f, i64 p);
}  // namespace fp_poly

/// The finite field F_{p^k}, k = ord_n(p), together with a fixed element of
/// exact multiplicative order n. This realizes reduction of Q(zeta_n) at one
/// fixed prime above p. Construction is deterministic in (p, n).
class FieldEmbedding {
 public:
  FieldEmbedding(i64 p, i64 n);

  i64 p() const { return p_; }
  i64 n() const { return n_; }
  int degree() const { return k_; }
  const std::vector<i64>& modulus() const { return modulus_; }
  const FieldElem& zeta() const { return zeta_pows_.size() > 1 ? zeta_pows_[1] : zeta_pows_[0]; }
  /// zeta^e for any integer e.
  const FieldElem& zeta_pow(i64 e) const { return zeta_pows_[static_cast<std::size_t>(mod(e, n_))]; }

  FieldElem zero() const { return FieldElem{std::vector<i64>(static_cast<std::size_t>(k_), 0)}; }
  FieldElem one() const { return from_int(1); }
  FieldElem from_int(i64 v) const;
  bool is_zero(const FieldElem& x) const;

  FieldElem add(const FieldElem& x, const FieldElem& y) const;
  FieldElem sub(const FieldElem& x, const FieldElem& y) const;
  FieldElem neg(const FieldElem& x) const;
  FieldElem mul(const FieldElem& x, const FieldElem& y) const;
  FieldElem pow(const FieldElem& x, const BigInt& e) const;
  FieldElem inv(const FieldElem& x) const;
  /// Frobenius-power test: x lies in the subfield F_{p^d}.
  bool in_subfield(const FieldElem& x, int d) const;

  /// True iff x has multiplicative order exactly m.
  bool has_exact_order(const FieldElem& x, i64 m) const;
  BigInt field_size() const;

 private:
  FieldElem from_poly(fp_poly::Poly f) const;

  i64 p_;
  i64 n_;
  int k_;
  std::vector<i64> modulus_;
  std::vector<FieldElem> zeta_pows_;
};

}  // namespace tpl
