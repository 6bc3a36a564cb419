#pragma once

#include <compare>
#include <cstddef>
#include <ostream>
#include <vector>

#include "tpl/arith.hpp"

namespace tpl {

/// Negative fundamental discriminant of an imaginary quadratic field.
class Discriminant {
 public:
  /// Throws PreconditionError unless d is a negative fundamental discriminant.
  explicit Discriminant(i64 d);

  i64 value() const { return d_; }
  /// 0 if D = 0 mod 4, 1 if D = 1 mod 4.
  int parity() const { return static_cast<int>(mod(d_, 2)); }
  /// True for Q(i) and Q(sqrt(-3)), whose unit groups exceed {+-1}.
  bool has_extra_units() const { return d_ == -3 || d_ == -4; }

  friend bool operator==(const Discriminant&, const Discriminant&) = default;

 private:
  i64 d_;
};

bool is_fundamental_discriminant(i64 d);

/// Primitive positive definite form a x^2 + b xy + c y^2.
struct QuadForm {
  i64 a = 1;
  i64 b = 0;
  i64 c = 0;

  i64 discriminant() const { return b * b - 4 * a * c; }
  bool is_reduced() const;

  friend auto operator<=>(const QuadForm&, const QuadForm&) = default;
  friend std::ostream& operator<<(std::ostream& os, const QuadForm& f) {
    return os << "(" << f.a << "," << f.b << "," << f.c << ")";
  }
};

/// Reduced representative of the SL2(Z)-class of f.
QuadForm reduce(QuadForm f);

/// Principal (identity) form of discriminant D.
QuadForm principal_form(const Discriminant& D);

/// Gauss/Dirichlet composition followed by reduction.
QuadForm compose(const QuadForm& f, const QuadForm& g);
QuadForm inverse(const QuadForm& f);
QuadForm power(const QuadForm& f, i64 n);

/// All reduced forms of discriminant D, sorted lexicographically by (a, b, c).
std::vector<QuadForm> enumerate_reduced_forms(const Discriminant& D);

/// The O_K-ideal attached to a form: Z-basis a, (-b + sqrt(D))/2.
struct IdealClass {
  QuadForm form;
  i64 norm() const { return form.a; }
  /// Coordinates (rational part, sqrt(D) part) of the second generator,
  /// each scaled by 2: (-b, 1).
  std::pair<i64, i64> second_generator_times_two() const { return {-form.b, 1}; }
};

struct CyclicFactor {
  QuadForm generator;
  i64 order;
};

/// Finite abelian group Cl_K with an invariant-factor basis
/// (orders n_1 | n_2 | ... | n_d) and exponent-vector coordinates.
class ClassGroup {
 public:
  explicit ClassGroup(const Discriminant& D);

  const Discriminant& discriminant() const { return D_; }
  i64 order() const { return static_cast<i64>(forms_.size()); }
  /// Largest invariant factor (1 for the trivial group).
  i64 exponent() const;
  const std::vector<CyclicFactor>& factors() const { return factors_; }
  std::vector<i64> invariant_factors() const;

  /// Reduced forms, index i <-> element i. Index 0 is the identity.
  const std::vector<QuadForm>& elements() const { return forms_; }
  std::size_t index_of(const QuadForm& reduced) const;
  std::size_t identity() const { return 0; }

  std::size_t multiply(std::size_t x, std::size_t y) const { return table_[x * forms_.size() + y]; }
  std::size_t invert(std::size_t x) const { return inverse_[x]; }
  std::size_t pow(std::size_t x, i64 n) const;

  /// Exponent vector of an element against factors().
  const std::vector<i64>& encode(std::size_t x) const { return coords_[x]; }
  std::size_t decode(const std::vector<i64>& exps) const;

 private:
  Discriminant D_;
  std::vector<QuadForm> forms_;
  std::vector<std::size_t> table_;
  std::vector<std::size_t> inverse_;
  std::vector<CyclicFactor> factors_;
  std::vector<std::vector<i64>> coords_;
};

inline ClassGroup class_group_structure(const Discriminant& D) { return ClassGroup(D); }

}  // namespace tpl
