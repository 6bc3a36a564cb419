#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "tpl/bqf.hpp"
#include "tpl/shimura.hpp"

namespace tpl {

/// Image of omega_K = (t + sqrt(D))/2 in the left order O_c of the class
/// representative I_c; c is the first class whose left order admits one.
struct TorusEmbedding {
  Quat omega;
  std::size_t base = 0;         // c
  std::array<i64, 4> coords{};  // coordinates of omega on the basis of O_c
  i64 D = 0;
  i64 t = 0;  // trd(omega) = D mod 2
  i64 n = 0;  // nrd(omega) = (t^2 - D)/4
};

/// Every omega in O_c with trd t and nrd n, sorted by coordinates, for the
/// first class c that has any. Throws PreconditionError if q splits in K or q | D.
std::vector<TorusEmbedding> all_embeddings(const ShimuraSet& X, const Discriminant& D);

/// Z + Z omega is saturated in O_c and omega has the right minimal polynomial.
bool is_optimal(const ShimuraSet& X, const TorusEmbedding& e);

/// The lexicographically smallest embedding.
TorusEmbedding optimal_embedding(const ShimuraSet& X, const Discriminant& D);
/// The smallest embedding not conjugate to the first under O_c^x, else the largest one.
TorusEmbedding alternate_embedding(const ShimuraSet& X, const Discriminant& D);

/// iota(a) J for the O_K-ideal a = [f.a, (-f.b + sqrt(D))/2] and a right O-ideal J.
RightIdeal embedded_product(const ShimuraSet& X, const TorusEmbedding& e, const QuadForm& f, const RightIdeal& J);
/// iota(a) I_c.
RightIdeal embedded_ideal(const ShimuraSet& X, const TorusEmbedding& e, const QuadForm& f);

/// Index in X of the class of iota(a) I_c, for any primitive form f of discriminant D.
std::size_t special_point(const TorusEmbedding& e, const QuadForm& f, const ShimuraSet& X);

/// special_point over the elements of Cl_K, in ClassGroup order.
std::vector<std::size_t> phi_map(const ClassGroup& G, const TorusEmbedding& e, const ShimuraSet& X);

/// Number of (sigma, tau) pairs for which iota(a_sigma a_tau) I_c and
/// iota(a_sigma) (iota(a_tau) I_c) fall in different classes.
std::size_t cocycle_failures(const ClassGroup& G, const TorusEmbedding& e, const ShimuraSet& X,
                             const std::vector<std::size_t>& phi);

/// Per class i, the number of optimal embeddings O_K -> O_l(I_i) up to
/// conjugation by units, counted as representations of |D| by the
/// trace-zero part of Z + 2 O_l(I_i).
std::vector<i64> gross_counts(const ShimuraSet& X, const Discriminant& D);

}  // namespace tpl
