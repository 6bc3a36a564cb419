#pragma once

#include <memory>
#include <ostream>
#include <vector>

#include "tpl/arith.hpp"
#include "tpl/finite_field.hpp"

namespace tpl {

/// n-th cyclotomic polynomial, integer coefficients low to high.
const std::vector<i64>& cyclotomic_polynomial(i64 n);

/// Element of Z[zeta_n] in the power basis 1, zeta, ..., zeta^(phi(n)-1).
class CycloInt {
 public:
  explicit CycloInt(i64 n);
  /// Reduce an element given on 1, zeta, ..., zeta^(n-1) (i.e. modulo x^n - 1).
  static CycloInt from_group_ring(i64 n, const std::vector<i64>& coeffs);
  static CycloInt monomial(i64 n, i64 exponent, i64 coefficient = 1);
  static CycloInt integer(i64 n, i64 value);

  i64 n() const { return n_; }
  const std::vector<i64>& coeffs() const { return c_; }
  bool is_zero() const;
  /// True if the value lies in Z; returns it via out.
  bool as_integer(i64& out) const;

  CycloInt operator+(const CycloInt& o) const;
  CycloInt operator-(const CycloInt& o) const;
  CycloInt operator*(const CycloInt& o) const;
  CycloInt scaled(i64 s) const;
  friend bool operator==(const CycloInt&, const CycloInt&) = default;

  /// Image under the ring map zeta -> emb.zeta(); requires emb.n() == n().
  FieldElem reduce(const FieldEmbedding& emb) const;

  friend std::ostream& operator<<(std::ostream& os, const CycloInt& x);

 private:
  static std::vector<i64> reduce_poly(i64 n, std::vector<i128> coeffs);

  i64 n_;
  std::vector<i64> c_;
};

}  // namespace tpl
