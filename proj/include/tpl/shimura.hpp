#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "tpl/quaternion.hpp"

namespace tpl {

struct QuatOrder {
  QuaternionAlgebra A;
  Lattice lattice;
  IntMatrix gram;  // trd(x conj(y)) on the basis
};

/// Reduced discriminant sqrt|det trd(x_i conj(x_j))| of a lattice.
Rational reduced_discriminant(const QuaternionAlgebra& A, const Lattice& L);

/// True if L contains 1, is closed under multiplication and consists of integral elements.
bool is_order(const QuaternionAlgebra& A, const Lattice& L);

/// Enlarge an order at the primes p dividing disc/q until its reduced discriminant is q.
Lattice saturate(const QuaternionAlgebra& A, Lattice O);

/// Maximal order of discriminant q; throws CertificationError if the
/// discriminant cannot be certified.
QuatOrder maximal_order(const QuaternionAlgebra& A);

struct RightIdeal {
  Lattice lattice;
  Rational norm;  // reduced norm nrd(I)
};

/// The right O-ideal generated by gens, i.e. the Z-span of g*b for b in O.
RightIdeal make_right_ideal(const QuatOrder& O, const std::vector<Quat>& gens);
RightIdeal unit_ideal(const QuatOrder& O);
/// Lattice with the same reduced norm as I checked against its covolume.
Rational ideal_norm(const QuatOrder& O, const Lattice& I);

/// Left order I conj(I) / nrd(I).
Lattice left_order(const QuatOrder& O, const RightIdeal& I);
/// Number of units of an order (elements of reduced norm 1).
i64 unit_count(const QuaternionAlgebra& A, const Lattice& order);

/// I and J (same right order) are isomorphic iff J = aI for some a in B^x.
bool is_isomorphic(const QuatOrder& O, const RightIdeal& I, const RightIdeal& J);

/// The l+1 right sub-ideals J of I with nrd(J) = l nrd(I), for l prime, l != q.
std::vector<RightIdeal> neighbors(const QuatOrder& O, const RightIdeal& I, i64 ell);

/// An isomorphic ideal of small norm: conj(x) I / nrd(I) with x of minimal norm in I.
RightIdeal reduce_ideal(const QuatOrder& O, const RightIdeal& I);

struct ShimuraSet {
  QuatOrder order;
  std::vector<RightIdeal> classes;
  std::vector<i64> weights;  // half the number of units of each left order

  std::size_t size() const { return classes.size(); }
  /// sum_i 1 / (2 w_i)
  Rational mass() const;
  /// Index of the class of I; throws CertificationError if none matches.
  std::size_t locate(const RightIdeal& I) const;
};

/// All right-ideal classes, by closing [O] under l-neighbours until the
/// mass (q - 1)/24 is reached.
ShimuraSet right_ideal_classes(const QuatOrder& O, int max_rounds = 10000);

struct BrandtMatrix {
  i64 n = 1;
  std::vector<std::vector<i64>> entries;
  friend bool operator==(const BrandtMatrix&, const BrandtMatrix&) = default;
};

/// B(n)_ij = #{x in I_i conj(I_j) : nrd(x) = n nrd(I_i) nrd(I_j)} / (2 w_j).
BrandtMatrix brandt_matrix(const ShimuraSet& X, i64 n);
/// B(1), ..., B(nmax) from a single theta-series pass.
std::vector<BrandtMatrix> brandt_matrices(const ShimuraSet& X, i64 nmax);

std::vector<std::vector<i64>> mat_mul(const std::vector<std::vector<i64>>& a, const std::vector<std::vector<i64>>& b);

/// Basis of the rational kernel of M (rows of equal length), as integer vectors.
std::vector<std::vector<i64>> integer_kernel(const std::vector<std::vector<Rational>>& M);

struct Eigenform {
  std::vector<i64> coords;
  std::map<i64, i64> eigenvalues;
};

/// Common eigenvector of B(l) with eigenvalue a_l for the given l (l = q skipped),
/// scaled to content 1 with first nonzero coordinate positive. Throws
/// CertificationError if the eigenspace is not one-dimensional.
Eigenform eigenform(const ShimuraSet& X, const std::map<i64, i64>& a_ell, i64 p);

/// Dimension of ker(B - a).
std::size_t eigenspace_dimension(const BrandtMatrix& B, i64 a);

/// The two-sided ideal j O + q O of norm q.
RightIdeal ramified_ideal(const QuatOrder& O);
/// The permutation [I] -> [I P] of the class set.
std::vector<std::size_t> tau_action(const ShimuraSet& X);

}  // namespace tpl
