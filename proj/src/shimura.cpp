#include "tpl/shimura.hpp"

#include <algorithm>
#include <deque>
#include <string>

namespace tpl {

namespace {

Rational det4(Matrix4 m) {
  Rational det = 1;
  for (std::size_t c = 0; c < 4; ++c) {
    std::size_t piv = c;
    while (piv < 4 && m[piv][c].sign() == 0) ++piv;
    if (piv == 4) return 0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < 4; ++r) {
      if (m[r][c].sign() == 0) continue;
      const Rational f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < 4; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

Rational rational_sqrt(const Rational& r) {
  if (r.sign() < 0) throw CertificationError("square root of a negative rational");
  const i64 n = narrow(r.num()), d = narrow(r.den());
  if (!is_square(n) || !is_square(d)) throw CertificationError("rational " + r.str() + " is not a square");
  return Rational(isqrt(n), isqrt(d));
}

Quat basis_quat(int idx) {
  Quat e;
  e.x[static_cast<std::size_t>(idx)] = 1;
  return e;
}

Quat make_quat(const Rational& a, const Rational& b, const Rational& c, const Rational& d) {
  return Quat{{a, b, c, d}};
}

Lattice span_with(const Lattice& L, const std::vector<Quat>& extra) {
  std::vector<Quat> gens(L.basis().begin(), L.basis().end());
  gens.insert(gens.end(), extra.begin(), extra.end());
  return Lattice::from_generators(gens);
}

bool integral_elements(const QuaternionAlgebra& A, const Lattice& L) {
  for (const auto& b : L.basis())
    if (!b.trd().is_integer() || !nrd(A, b).is_integer()) return false;
  for (const auto& row : L.gram(A))
    for (const auto& v : row)
      if (!v.is_integer()) return false;
  return true;
}

// Replaces L by the ring it generates; false if that ring is not integral.
bool close_to_order(const QuaternionAlgebra& A, Lattice& L) {
  for (int iter = 0; iter < 32; ++iter) {
    if (!integral_elements(A, L)) return false;
    const Lattice sq = lattice_product(A, L, L);
    Lattice next = span_with(L, std::vector<Quat>(sq.basis().begin(), sq.basis().end()));
    if (next == L) return true;
    L = next;
  }
  return false;
}

i64 min_scaled_norm(const IntMatrix& G, std::vector<i64>& best) {
  for (i64 bound = 2;; bound *= 2) {
    i64 best_value = -1;
    enumerate_short_vectors(
        G, bound,
        [&](const std::vector<i64>& x, i64 v) {
          if (best_value < 0 || v < best_value) {
            best_value = v;
            best = x;
          }
          return true;
        },
        /*half=*/true);
    if (best_value >= 0) return best_value;
  }
}

}  // namespace

Rational reduced_discriminant(const QuaternionAlgebra& A, const Lattice& L) {
  Rational d = det4(L.gram(A));
  if (d.sign() < 0) d = -d;
  return rational_sqrt(d);
}

bool is_order(const QuaternionAlgebra& A, const Lattice& L) {
  if (!L.contains(Quat::scalar(1))) return false;
  if (!integral_elements(A, L)) return false;
  for (const auto& x : L.basis())
    for (const auto& y : L.basis())
      if (!L.contains(multiply(A, x, y))) return false;
  return true;
}

Lattice saturate(const QuaternionAlgebra& A, Lattice O) {
  for (;;) {
    const Rational disc = reduced_discriminant(A, O);
    if (!disc.is_integer()) throw CertificationError("order has non-integral discriminant");
    if (disc == Rational(A.q)) return O;
    if (narrow(disc.num()) % A.q != 0) throw CertificationError("order discriminant not divisible by q");
    bool grown = false;
    for (i64 p : prime_divisors(narrow(disc.num()) / A.q)) {
      const auto& b = O.basis();
      for (i64 code = 1; code < p * p * p * p && !grown; ++code) {
        Quat x;
        i64 c = code;
        for (std::size_t i = 0; i < 4; ++i) {
          x = x + b[i].scaled(Rational(c % p, p));
          c /= p;
        }
        if (!x.trd().is_integer() || !nrd(A, x).is_integer()) continue;
        Lattice bigger = span_with(O, {x});
        if (close_to_order(A, bigger) && is_order(A, bigger)) {
          O = bigger;
          grown = true;
        }
      }
      if (grown) break;
    }
    if (!grown) throw CertificationError("saturation stalled before reaching discriminant q");
  }
}

QuatOrder maximal_order(const QuaternionAlgebra& A) {
  const i64 q = A.q;
  const Rational h(1, 2);
  std::vector<Quat> gens;
  if (q == 2) {
    gens = {make_quat(h, h, h, h), basis_quat(1), basis_quat(2), basis_quat(3)};
  } else if (A.a == -1) {
    gens = {Quat::scalar(1), basis_quat(1), make_quat(h, 0, h, 0), make_quat(0, h, 0, h)};
  } else if (A.a == -2) {
    gens = {make_quat(h, 0, h, h), make_quat(0, Rational(1, 4), h, Rational(1, 4)), basis_quat(2), basis_quat(3)};
  } else {
    const i64 r = -A.a;
    i64 c = 0;
    while ((c * c % r * (q % r) + 1) % r != 0) ++c;
    gens = {make_quat(h, 0, h, 0), make_quat(0, h, 0, h), make_quat(0, 0, Rational(1, r), Rational(c, r)),
            basis_quat(3)};
  }
  Lattice L = Lattice::from_generators(gens);
  if (!is_order(A, L) || reduced_discriminant(A, L) != Rational(q)) {
    L = saturate(A, Lattice::from_generators({Quat::scalar(1), basis_quat(1), basis_quat(2), basis_quat(3)}));
  }
  if (!is_order(A, L) || reduced_discriminant(A, L) != Rational(q))
    throw CertificationError("could not certify a maximal order for q = " + std::to_string(q));
  return QuatOrder{A, L, integral_gram(L.gram(A), 1)};
}

Rational ideal_norm(const QuatOrder& O, const Lattice& I) {
  return rational_sqrt(I.covolume() / O.lattice.covolume());
}

RightIdeal make_right_ideal(const QuatOrder& O, const std::vector<Quat>& gens) {
  std::vector<Quat> all;
  for (const auto& g : gens)
    for (const auto& b : O.lattice.basis()) all.push_back(multiply(O.A, g, b));
  Lattice L = Lattice::from_generators(all);
  return RightIdeal{L, ideal_norm(O, L)};
}

RightIdeal unit_ideal(const QuatOrder& O) { return RightIdeal{O.lattice, Rational(1)}; }

Lattice left_order(const QuatOrder& O, const RightIdeal& I) {
  return lattice_product(O.A, I.lattice, I.lattice.conj()).scaled(Rational(1) / I.norm);
}

i64 unit_count(const QuaternionAlgebra& A, const Lattice& order) {
  const IntMatrix G = integral_gram(order.gram(A), 1);
  i64 count = 0;
  enumerate_short_vectors(G, 2, [&](const std::vector<i64>&, i64 v) {
    if (v == 2) count += 2;
    return true;
  }, /*half=*/true);
  return count;
}

bool is_isomorphic(const QuatOrder& O, const RightIdeal& I, const RightIdeal& J) {
  const Lattice M = lattice_product(O.A, J.lattice, I.lattice.conj());
  const IntMatrix G = integral_gram(M.gram(O.A), I.norm * J.norm);
  bool found = false;
  enumerate_short_vectors(G, 2, [&](const std::vector<i64>&, i64 v) {
    if (v == 2) found = true;
    return !found;
  }, /*half=*/true);
  return found;
}

std::vector<RightIdeal> neighbors(const QuatOrder& O, const RightIdeal& I, i64 ell) {
  if (!is_prime(ell) || ell == O.A.q) throw PreconditionError("neighbour prime must be a prime different from q");
  const auto& e = I.lattice.basis();
  std::vector<Quat> ell_I;
  for (const auto& b : e) ell_I.push_back(b.scaled(ell));
  std::vector<RightIdeal> out;
  const i64 total = ell * ell * ell * ell;
  for (i64 code = 1; code < total; ++code) {
    Quat g;
    i64 c = code;
    for (std::size_t i = 0; i < 4; ++i) {
      if (c % ell) g = g + e[i].scaled(c % ell);
      c /= ell;
    }
    const Rational rel = nrd(O.A, g) / I.norm;
    if (!rel.is_integer() || mod(narrow(rel.num()), ell) != 0) continue;
    std::vector<Quat> gens = ell_I;
    for (const auto& b : O.lattice.basis()) gens.push_back(multiply(O.A, g, b));
    Lattice L = Lattice::from_generators(gens);
    if (std::any_of(out.begin(), out.end(), [&](const RightIdeal& r) { return r.lattice == L; })) continue;
    out.push_back(RightIdeal{L, ideal_norm(O, L)});
  }
  if (static_cast<i64>(out.size()) != ell + 1)
    throw CertificationError("found " + std::to_string(out.size()) + " neighbours, expected " + std::to_string(ell + 1));
  for (const auto& J : out)
    if (J.norm != I.norm * ell) throw CertificationError("neighbour has wrong norm");
  return out;
}

RightIdeal reduce_ideal(const QuatOrder& O, const RightIdeal& I) {
  const IntMatrix G = integral_gram(I.lattice.gram(O.A), I.norm);
  std::vector<i64> best;
  min_scaled_norm(G, best);
  const Quat x = I.lattice.element({best[0], best[1], best[2], best[3]});
  const Quat y = x.conj().scaled(Rational(1) / I.norm);
  std::vector<Quat> gens;
  for (const auto& b : I.lattice.basis()) gens.push_back(multiply(O.A, y, b));
  Lattice L = Lattice::from_generators(gens);
  RightIdeal out{L, ideal_norm(O, L)};
  if (out.norm != nrd(O.A, x) / I.norm) throw CertificationError("reduced ideal has unexpected norm");
  return out;
}

Rational ShimuraSet::mass() const {
  Rational m = 0;
  for (i64 w : weights) m += Rational(1, 2 * w);
  return m;
}

std::size_t ShimuraSet::locate(const RightIdeal& I) const {
  for (std::size_t i = 0; i < classes.size(); ++i)
    if (is_isomorphic(order, classes[i], I)) return i;
  throw CertificationError("ideal matches no class representative");
}

ShimuraSet right_ideal_classes(const QuatOrder& O, int max_rounds) {
  const Rational target(O.A.q - 1, 24);
  const i64 ell = O.A.q == 2 ? 3 : 2;
  ShimuraSet X;
  X.order = O;
  X.classes.push_back(unit_ideal(O));
  X.weights.push_back(unit_count(O.A, O.lattice) / 2);
  std::vector<i64> unit_counts{2 * X.weights[0]};
  std::deque<std::size_t> queue{0};
  int rounds = 0;
  while (X.mass() < target) {
    if (queue.empty() || ++rounds > max_rounds)
      throw CertificationError("mass formula not reached: " + X.mass().str() + " < " + target.str());
    const std::size_t cur = queue.front();
    queue.pop_front();
    for (const auto& J : neighbors(O, X.classes[cur], ell)) {
      RightIdeal R = reduce_ideal(O, J);
      const i64 units = unit_count(O.A, left_order(O, R));
      bool known = false;
      for (std::size_t i = 0; i < X.classes.size() && !known; ++i)
        known = unit_counts[i] == units && is_isomorphic(O, X.classes[i], R);
      if (known) continue;
      X.classes.push_back(R);
      X.weights.push_back(units / 2);
      unit_counts.push_back(units);
      queue.push_back(X.classes.size() - 1);
      if (X.mass() >= target) break;
    }
  }
  if (X.mass() != target) throw CertificationError("mass formula overshoot: " + X.mass().str());
  return X;
}

std::vector<BrandtMatrix> brandt_matrices(const ShimuraSet& X, i64 nmax) {
  const std::size_t H = X.size();
  std::vector<BrandtMatrix> out(static_cast<std::size_t>(nmax));
  for (i64 n = 1; n <= nmax; ++n) {
    out[static_cast<std::size_t>(n - 1)].n = n;
    out[static_cast<std::size_t>(n - 1)].entries.assign(H, std::vector<i64>(H, 0));
  }
  const auto& A = X.order.A;
  for (std::size_t i = 0; i < H; ++i)
    for (std::size_t j = i; j < H; ++j) {
      const Lattice M = lattice_product(A, X.classes[i].lattice, X.classes[j].lattice.conj());
      const IntMatrix G = integral_gram(M.gram(A), X.classes[i].norm * X.classes[j].norm);
      const auto theta = theta_series(G, nmax);
      for (i64 n = 1; n <= nmax; ++n) {
        const i64 N = theta[static_cast<std::size_t>(n)];
        auto& E = out[static_cast<std::size_t>(n - 1)].entries;
        if (N % (2 * X.weights[j]) != 0 || N % (2 * X.weights[i]) != 0)
          throw CertificationError("Brandt count not divisible by unit order");
        E[i][j] = N / (2 * X.weights[j]);
        E[j][i] = N / (2 * X.weights[i]);
      }
    }
  return out;
}

BrandtMatrix brandt_matrix(const ShimuraSet& X, i64 n) {
  if (n < 1) throw PreconditionError("Brandt index must be positive");
  return brandt_matrices(X, n).back();
}

std::vector<std::vector<i64>> mat_mul(const std::vector<std::vector<i64>>& a, const std::vector<std::vector<i64>>& b) {
  const std::size_t n = a.size(), m = b.empty() ? 0 : b[0].size(), k = b.size();
  std::vector<std::vector<i64>> c(n, std::vector<i64>(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l)
      for (std::size_t j = 0; j < m; ++j) c[i][j] = narrow(checked_add(c[i][j], checked_mul(a[i][l], b[l][j])));
  return c;
}

std::vector<std::vector<i64>> integer_kernel(const std::vector<std::vector<Rational>>& M0) {
  auto M = M0;
  const std::size_t rows = M.size();
  const std::size_t cols = rows ? M[0].size() : 0;
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && M[piv][c].sign() == 0) ++piv;
    if (piv == rows) continue;
    std::swap(M[r], M[piv]);
    const Rational inv = Rational(1) / M[r][c];
    for (auto& v : M[r]) v *= inv;
    for (std::size_t o = 0; o < rows; ++o) {
      if (o == r || M[o][c].sign() == 0) continue;
      const Rational f = M[o][c];
      for (std::size_t k = 0; k < cols; ++k) M[o][k] -= f * M[r][k];
    }
    pivot_cols.push_back(c);
    ++r;
  }
  std::vector<std::vector<i64>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (std::find(pivot_cols.begin(), pivot_cols.end(), free) != pivot_cols.end()) continue;
    std::vector<Rational> v(cols, Rational(0));
    v[free] = 1;
    for (std::size_t k = 0; k < pivot_cols.size(); ++k) v[pivot_cols[k]] = -M[k][free];
    i128 den = 1;
    for (const auto& x : v) den = checked_mul(den / gcd128(den, x.den()), x.den());
    std::vector<i64> iv;
    i64 content = 0;
    for (const auto& x : v) {
      iv.push_back(narrow((x * Rational(den)).num()));
      content = gcd(content, iv.back());
    }
    for (auto& x : iv) x /= content;
    basis.push_back(iv);
  }
  return basis;
}

std::size_t eigenspace_dimension(const BrandtMatrix& B, i64 a) {
  std::vector<std::vector<Rational>> M;
  for (std::size_t i = 0; i < B.entries.size(); ++i) {
    std::vector<Rational> row;
    for (std::size_t j = 0; j < B.entries.size(); ++j) row.emplace_back(B.entries[i][j] - (i == j ? a : 0));
    M.push_back(row);
  }
  return integer_kernel(M).size();
}

Eigenform eigenform(const ShimuraSet& X, const std::map<i64, i64>& a_ell, i64 p) {
  const std::size_t H = X.size();
  i64 nmax = 1;
  for (const auto& [ell, a] : a_ell)
    if (ell != X.order.A.q) nmax = std::max(nmax, ell);
  const auto Bs = brandt_matrices(X, nmax);
  std::vector<std::vector<Rational>> M;
  Eigenform f;
  for (const auto& [ell, a] : a_ell) {
    if (ell == X.order.A.q) continue;
    f.eigenvalues[ell] = a;
    const auto& B = Bs[static_cast<std::size_t>(ell - 1)].entries;
    for (std::size_t i = 0; i < H; ++i) {
      std::vector<Rational> row;
      for (std::size_t j = 0; j < H; ++j) row.emplace_back(B[i][j] - (i == j ? a : 0));
      M.push_back(row);
    }
  }
  if (f.eigenvalues.empty()) throw PreconditionError("eigenform needs at least one Hecke eigenvalue");
  const auto ker = integer_kernel(M);
  if (ker.size() != 1)
    throw CertificationError("eigenspace has dimension " + std::to_string(ker.size()) + ", expected 1");
  f.coords = ker[0];
  for (i64 v : f.coords)
    if (v != 0) {
      if (v < 0)
        for (auto& x : f.coords) x = -x;
      break;
    }
  i64 content = 0;
  for (i64 v : f.coords) content = gcd(content, v);
  if (p != 0 && content % p == 0) throw CertificationError("eigenform content divisible by p");
  Rational cusp = 0;
  for (std::size_t i = 0; i < H; ++i) cusp += Rational(f.coords[i], X.weights[i]);
  if (cusp.sign() != 0) throw CertificationError("eigenform is not orthogonal to constants");
  return f;
}

RightIdeal ramified_ideal(const QuatOrder& O) {
  RightIdeal P = make_right_ideal(O, {basis_quat(2), Quat::scalar(O.A.q)});
  if (P.norm != Rational(O.A.q)) throw CertificationError("ramified ideal has wrong norm");
  for (const auto& b : O.lattice.basis())
    for (const auto& x : P.lattice.basis())
      if (!P.lattice.contains(multiply(O.A, b, x))) throw CertificationError("ramified ideal is not two-sided");
  return P;
}

std::vector<std::size_t> tau_action(const ShimuraSet& X) {
  const RightIdeal P = ramified_ideal(X.order);
  std::vector<std::size_t> perm;
  for (const auto& I : X.classes) {
    Lattice L = lattice_product(X.order.A, I.lattice, P.lattice);
    perm.push_back(X.locate(RightIdeal{L, I.norm * P.norm}));
  }
  for (std::size_t i = 0; i < perm.size(); ++i)
    if (perm[perm[i]] != i) throw CertificationError("tau action is not an involution");
  return perm;
}

}  // namespace tpl
