#pragma once

#include <array>
#include <functional>
#include <ostream>
#include <vector>

#include "tpl/arith.hpp"

namespace tpl {

/// Hilbert symbol (a, b)_v for v a prime or v = -1 (the real place).
int hilbert_symbol(i64 a, i64 b, i64 v);

/// Definite quaternion algebra (a, b / Q): i^2 = a, j^2 = b, k = ij = -ji.
struct QuaternionAlgebra {
  i64 a = -1;
  i64 b = -1;
  i64 q = 2;  // the finite ramified prime

  /// Finite primes at which the algebra ramifies (checked at 2 and at
  /// every prime dividing 2ab).
  std::vector<i64> ramified_primes() const;
  bool is_definite() const { return a < 0 && b < 0; }
};

/// The algebra of discriminant q with the classical choice of (a, b).
QuaternionAlgebra build_algebra(i64 q);

/// Element x0 + x1 i + x2 j + x3 k with rational coordinates.
struct Quat {
  std::array<Rational, 4> x{};

  static Quat scalar(const Rational& r) { return Quat{{r, 0, 0, 0}}; }
  Quat conj() const { return Quat{{x[0], -x[1], -x[2], -x[3]}}; }
  Rational trd() const { return x[0] * 2; }
  Quat operator+(const Quat& o) const;
  Quat operator-(const Quat& o) const;
  Quat scaled(const Rational& r) const;
  friend bool operator==(const Quat&, const Quat&) = default;
  friend std::ostream& operator<<(std::ostream& os, const Quat& q);
};

Quat multiply(const QuaternionAlgebra& A, const Quat& u, const Quat& v);
Rational nrd(const QuaternionAlgebra& A, const Quat& u);
/// trd(u * conj(v)), the bilinear form attached to 2 nrd.
Rational bilinear(const QuaternionAlgebra& A, const Quat& u, const Quat& v);

using Matrix4 = std::array<std::array<Rational, 4>, 4>;
using IntMatrix = std::vector<std::vector<i64>>;

/// Full-rank Z-lattice in the algebra, stored as a canonical Hermite basis
/// (rows), so equal lattices have identical bases.
class Lattice {
 public:
  Lattice() = default;
  /// Z-span of the generators; throws if the span has rank < 4.
  static Lattice from_generators(const std::vector<Quat>& gens);

  const std::array<Quat, 4>& basis() const { return basis_; }
  /// Rational coordinates of x with respect to basis(); integral iff x is in the lattice.
  std::array<Rational, 4> coordinates(const Quat& x) const;
  bool contains(const Quat& x) const;
  bool contains(const Lattice& other) const;
  Quat element(const std::array<i64, 4>& coords) const;

  /// Gram matrix of trd(x conj(y)).
  Matrix4 gram(const QuaternionAlgebra& A) const;
  /// Covolume relative to Z<1,i,j,k>, i.e. |det(basis)|.
  Rational covolume() const;

  Lattice scaled(const Rational& r) const;
  Lattice conj() const;

  friend bool operator==(const Lattice&, const Lattice&) = default;
  friend std::ostream& operator<<(std::ostream& os, const Lattice& L);

 private:
  std::array<Quat, 4> basis_{};
};

/// Z-span of all products x*y, x in L, y in M.
Lattice lattice_product(const QuaternionAlgebra& A, const Lattice& L, const Lattice& M);

/// Integral version of a rational Gram matrix divided by `scale`; throws
/// CertificationError if an entry is not an integer.
IntMatrix integral_gram(const Matrix4& gram, const Rational& scale);

/// Exact Fincke-Pohst enumeration: calls visit(x, x^T G x) for every integer
/// vector x with x^T G x <= bound, G positive definite. Only one of each pair
/// {x, -x} is visited when `half` is set (the first nonzero coordinate from the
/// end is positive); zero is visited unless skip_zero. Enumeration stops early
/// if visit returns false.
void enumerate_short_vectors(const IntMatrix& G, i64 bound,
                             const std::function<bool(const std::vector<i64>&, i64)>& visit,
                             bool half = false, bool skip_zero = true);

/// Number of x with x^T G x = 2m for m = 0..max_norm (theta series of nrd).
std::vector<i64> theta_series(const IntMatrix& G, i64 max_norm);

}  // namespace tpl
