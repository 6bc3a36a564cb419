#include "tpl/special_points.hpp"

#include <algorithm>
#include <string>

namespace tpl {

namespace {

std::vector<Quat> unit_group(const QuaternionAlgebra& A, const Lattice& order) {
  std::vector<Quat> units;
  enumerate_short_vectors(integral_gram(order.gram(A), 1), 2, [&](const std::vector<i64>& x, i64 v) {
    if (v == 2) units.push_back(order.element({x[0], x[1], x[2], x[3]}));
    return true;
  });
  return units;
}

void check_scope(i64 q, const Discriminant& D) {
  if (D.value() % q == 0) throw PreconditionError("q divides D = " + std::to_string(D.value()));
  if (kronecker(D.value(), q) == 1)
    throw PreconditionError("q = " + std::to_string(q) + " splits in K, D = " + std::to_string(D.value()) +
                            "; no embedding exists");
}

}  // namespace

std::vector<TorusEmbedding> all_embeddings(const ShimuraSet& X, const Discriminant& D) {
  const auto& A = X.order.A;
  check_scope(A.q, D);
  const i64 t = D.parity();
  const i64 n = (t * t - D.value()) / 4;
  std::vector<TorusEmbedding> out;
  for (std::size_t c = 0; c < X.size() && out.empty(); ++c) {
    const Lattice Oc = left_order(X.order, X.classes[c]);
    std::array<i64, 4> traces{};
    for (std::size_t i = 0; i < 4; ++i) traces[i] = narrow(Oc.basis()[i].trd().num());
    enumerate_short_vectors(integral_gram(Oc.gram(A), 1), 2 * n, [&](const std::vector<i64>& x, i64 v) {
      if (v != 2 * n) return true;
      i64 tr = 0;
      for (std::size_t i = 0; i < 4; ++i) tr += traces[i] * x[i];
      if (tr != t) return true;
      TorusEmbedding e;
      e.base = c;
      e.coords = {x[0], x[1], x[2], x[3]};
      e.omega = Oc.element(e.coords);
      e.D = D.value();
      e.t = t;
      e.n = n;
      out.push_back(e);
      return true;
    });
  }
  std::sort(out.begin(), out.end(), [](const TorusEmbedding& a, const TorusEmbedding& b) { return a.coords < b.coords; });
  if (out.empty()) throw CertificationError("no embedding found for D = " + std::to_string(D.value()));
  for (const auto& e : out)
    if (!is_optimal(X, e)) throw CertificationError("embedding is not optimal");
  return out;
}

bool is_optimal(const ShimuraSet& X, const TorusEmbedding& e) {
  const auto& A = X.order.A;
  if (e.omega.trd() != Rational(e.t) || nrd(A, e.omega) != Rational(e.n)) return false;
  if (e.t * e.t - 4 * e.n != e.D) return false;
  const Lattice Oc = left_order(X.order, X.classes.at(e.base));
  const auto one = Oc.coordinates(Quat::scalar(1));
  const auto w = Oc.coordinates(e.omega);
  i64 g = 0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) {
      const Rational minor = one[i] * w[j] - one[j] * w[i];
      if (!minor.is_integer()) return false;
      g = gcd(g, narrow(minor.num()));
    }
  return g == 1;
}

TorusEmbedding optimal_embedding(const ShimuraSet& X, const Discriminant& D) { return all_embeddings(X, D).front(); }

TorusEmbedding alternate_embedding(const ShimuraSet& X, const Discriminant& D) {
  const auto all = all_embeddings(X, D);
  const auto& A = X.order.A;
  const auto units = unit_group(A, left_order(X.order, X.classes[all.front().base]));
  std::vector<Quat> orbit;
  for (const auto& u : units) orbit.push_back(multiply(A, multiply(A, u, all.front().omega), u.conj()));
  for (const auto& e : all)
    if (std::find(orbit.begin(), orbit.end(), e.omega) == orbit.end()) return e;
  return all.back();
}

RightIdeal embedded_product(const ShimuraSet& X, const TorusEmbedding& e, const QuadForm& f, const RightIdeal& J) {
  const QuatOrder& O = X.order;
  if (f.discriminant() != e.D || f.a <= 0) throw PreconditionError("form does not match the embedding");
  const Quat g1 = Quat::scalar(f.a);
  const Quat g2 = e.omega - Quat::scalar(Rational(f.b + e.t, 2));
  std::vector<Quat> gens;
  for (const auto& b : J.lattice.basis()) {
    gens.push_back(multiply(O.A, g1, b));
    gens.push_back(multiply(O.A, g2, b));
  }
  Lattice L = Lattice::from_generators(gens);
  RightIdeal out{L, ideal_norm(O, L)};
  if (out.norm != J.norm * f.a) throw CertificationError("embedded ideal has unexpected norm");
  return out;
}

RightIdeal embedded_ideal(const ShimuraSet& X, const TorusEmbedding& e, const QuadForm& f) {
  return embedded_product(X, e, f, X.classes.at(e.base));
}

std::size_t special_point(const TorusEmbedding& e, const QuadForm& f, const ShimuraSet& X) {
  return X.locate(embedded_ideal(X, e, f));
}

std::vector<std::size_t> phi_map(const ClassGroup& G, const TorusEmbedding& e, const ShimuraSet& X) {
  if (G.discriminant().value() != e.D) throw PreconditionError("class group and embedding disagree on D");
  std::vector<std::size_t> out;
  for (const auto& f : G.elements()) out.push_back(special_point(e, f, X));
  return out;
}

std::size_t cocycle_failures(const ClassGroup& G, const TorusEmbedding& e, const ShimuraSet& X,
                             const std::vector<std::size_t>& phi) {
  std::size_t failures = 0;
  const auto& forms = G.elements();
  for (std::size_t tau = 0; tau < forms.size(); ++tau) {
    const RightIdeal It = embedded_ideal(X, e, forms[tau]);
    for (std::size_t s = 0; s < forms.size(); ++s) {
      const RightIdeal J = embedded_product(X, e, forms[s], It);
      if (!is_isomorphic(X.order, X.classes[phi[G.multiply(s, tau)]], J)) ++failures;
    }
  }
  return failures;
}

std::vector<i64> gross_counts(const ShimuraSet& X, const Discriminant& D) {
  const i64 units_K = D.value() == -3 ? 6 : (D.value() == -4 ? 4 : 2);
  const i64 target = -D.value();
  std::vector<i64> out;
  for (std::size_t i = 0; i < X.size(); ++i) {
    const Lattice Oi = left_order(X.order, X.classes[i]);
    std::vector<Quat> gens{Quat::scalar(1)};
    for (const auto& b : Oi.basis()) gens.push_back(b.scaled(2));
    // Rows 1..3 of the Hermite basis have zero real part: the trace-zero sublattice.
    const Lattice L = Lattice::from_generators(gens);
    IntMatrix G(3, std::vector<i64>(3));
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = 0; c < 3; ++c) {
        const Rational v = bilinear(X.order.A, L.basis()[r + 1], L.basis()[c + 1]);
        if (!v.is_integer()) throw CertificationError("ternary Gram matrix is not integral");
        G[r][c] = narrow(v.num());
      }
    i64 reps = 0;
    enumerate_short_vectors(G, 2 * target, [&](const std::vector<i64>&, i64 v) {
      if (v == 2 * target) ++reps;
      return true;
    });
    const i64 orbit = 2 * X.weights[i];
    if ((reps * units_K) % orbit != 0) throw CertificationError("embedding count not divisible by unit orbit size");
    out.push_back(reps * units_K / orbit);
  }
  return out;
}

}  // namespace tpl
