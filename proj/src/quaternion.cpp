#include "tpl/quaternion.hpp"

#include <algorithm>
#include <string>

namespace tpl {

namespace {

int legendre(i64 a, i64 p) { return kronecker(a, p); }

}  // namespace

int hilbert_symbol(i64 a, i64 b, i64 v) {
  if (a == 0 || b == 0) throw PreconditionError("hilbert_symbol: arguments must be nonzero");
  if (v == -1) return (a < 0 && b < 0) ? -1 : 1;
  const int alpha = valuation(a, v), beta = valuation(b, v);
  i64 u = a, w = b;
  for (int i = 0; i < alpha; ++i) u /= v;
  for (int i = 0; i < beta; ++i) w /= v;
  if (v == 2) {
    auto eps = [](i64 x) { return static_cast<int>(mod((x - 1) / 2, 2)); };
    auto omega = [](i64 x) {
      i64 r = mod(x, 8);
      return (r == 3 || r == 5) ? 1 : 0;
    };
    const int e = eps(mod(u, 8)) * eps(mod(w, 8)) + alpha * omega(w) + beta * omega(u);
    return (e % 2 == 0) ? 1 : -1;
  }
  int s = 1;
  if ((alpha * beta) % 2 == 1 && mod(v, 4) == 3) s = -s;
  if (beta % 2 == 1) s *= legendre(u, v);
  if (alpha % 2 == 1) s *= legendre(w, v);
  return s;
}

std::vector<i64> QuaternionAlgebra::ramified_primes() const {
  std::vector<i64> candidates = prime_divisors(2 * a * b);
  std::vector<i64> out;
  for (i64 p : candidates)
    if (hilbert_symbol(a, b, p) == -1) out.push_back(p);
  return out;
}

QuaternionAlgebra build_algebra(i64 q) {
  if (!is_prime(q)) throw PreconditionError("q must be prime: " + std::to_string(q));
  QuaternionAlgebra A;
  A.q = q;
  A.b = -q;
  if (q == 2) {
    A.a = -1;
    A.b = -1;
  } else if (q % 4 == 3) {
    A.a = -1;
  } else if (q % 8 == 5) {
    A.a = -2;
  } else {
    i64 r = 3;
    while (!(is_prime(r) && r % 4 == 3 && kronecker(r, q) == -1)) r += 4;
    A.a = -r;
  }
  if (A.ramified_primes() != std::vector<i64>{q} || hilbert_symbol(A.a, A.b, -1) != -1)
    throw CertificationError("constructed algebra is not ramified exactly at {q, inf}");
  return A;
}

// ---------------------------------------------------------------- Quat

Quat Quat::operator+(const Quat& o) const {
  Quat r;
  for (int i = 0; i < 4; ++i) r.x[i] = x[i] + o.x[i];
  return r;
}

Quat Quat::operator-(const Quat& o) const {
  Quat r;
  for (int i = 0; i < 4; ++i) r.x[i] = x[i] - o.x[i];
  return r;
}

Quat Quat::scaled(const Rational& s) const {
  Quat r;
  for (int i = 0; i < 4; ++i) r.x[i] = x[i] * s;
  return r;
}

std::ostream& operator<<(std::ostream& os, const Quat& q) {
  return os << "[" << q.x[0] << "," << q.x[1] << "," << q.x[2] << "," << q.x[3] << "]";
}

Quat multiply(const QuaternionAlgebra& A, const Quat& u, const Quat& v) {
  const Rational a = A.a, b = A.b, ab = Rational(A.a) * A.b;
  const auto& x = u.x;
  const auto& y = v.x;
  Quat z;
  z.x[0] = x[0] * y[0] + a * x[1] * y[1] + b * x[2] * y[2] - ab * x[3] * y[3];
  z.x[1] = x[0] * y[1] + x[1] * y[0] - b * x[2] * y[3] + b * x[3] * y[2];
  z.x[2] = x[0] * y[2] + x[2] * y[0] + a * x[1] * y[3] - a * x[3] * y[1];
  z.x[3] = x[0] * y[3] + x[3] * y[0] + x[1] * y[2] - x[2] * y[1];
  return z;
}

Rational nrd(const QuaternionAlgebra& A, const Quat& u) {
  const auto& x = u.x;
  return x[0] * x[0] - Rational(A.a) * x[1] * x[1] - Rational(A.b) * x[2] * x[2] +
         Rational(A.a) * A.b * x[3] * x[3];
}

Rational bilinear(const QuaternionAlgebra& A, const Quat& u, const Quat& v) {
  const auto& x = u.x;
  const auto& y = v.x;
  return (x[0] * y[0] - Rational(A.a) * x[1] * y[1] - Rational(A.b) * x[2] * y[2] +
          Rational(A.a) * A.b * x[3] * y[3]) *
         2;
}

// ---------------------------------------------------------------- Lattice

Lattice Lattice::from_generators(const std::vector<Quat>& gens) {
  i128 L = 1;
  for (const auto& g : gens)
    for (const auto& c : g.x) L = checked_mul(L / gcd128(L, c.den()), c.den());
  std::vector<std::array<i128, 4>> M;
  for (const auto& g : gens) {
    std::array<i128, 4> row{};
    for (int i = 0; i < 4; ++i) row[static_cast<std::size_t>(i)] = checked_mul(g.x[static_cast<std::size_t>(i)].num(), L / g.x[static_cast<std::size_t>(i)].den());
    M.push_back(row);
  }
  const std::size_t m = M.size();
  std::size_t row = 0;
  for (std::size_t col = 0; col < 4; ++col) {
    for (;;) {
      std::size_t piv = m;
      for (std::size_t r = row; r < m; ++r)
        if (M[r][col] != 0 && (piv == m || (M[r][col] < 0 ? -M[r][col] : M[r][col]) < (M[piv][col] < 0 ? -M[piv][col] : M[piv][col])))
          piv = r;
      if (piv == m) throw CertificationError("lattice generators do not span a rank-4 lattice");
      std::swap(M[row], M[piv]);
      bool clean = true;
      for (std::size_t r = row + 1; r < m; ++r) {
        if (M[r][col] == 0) continue;
        const i128 f = M[r][col] / M[row][col];
        for (std::size_t c = col; c < 4; ++c) M[r][c] = checked_add(M[r][c], -checked_mul(f, M[row][c]));
        if (M[r][col] != 0) clean = false;
      }
      if (clean) break;
    }
    if (M[row][col] < 0)
      for (std::size_t c = col; c < 4; ++c) M[row][c] = -M[row][c];
    for (std::size_t r = 0; r < row; ++r) {
      i128 f = M[r][col] / M[row][col];
      if (M[r][col] - f * M[row][col] < 0) --f;
      if (f != 0)
        for (std::size_t c = col; c < 4; ++c) M[r][c] = checked_add(M[r][c], -checked_mul(f, M[row][c]));
    }
    ++row;
  }
  Lattice out;
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) out.basis_[r].x[c] = Rational(M[r][c], L);
  return out;
}

std::array<Rational, 4> Lattice::coordinates(const Quat& x) const {
  std::array<Rational, 4> coords{};
  Quat rest = x;
  for (std::size_t i = 0; i < 4; ++i) {
    coords[i] = rest.x[i] / basis_[i].x[i];
    rest = rest - basis_[i].scaled(coords[i]);
  }
  return coords;
}

bool Lattice::contains(const Quat& x) const {
  for (const auto& c : coordinates(x))
    if (!c.is_integer()) return false;
  return true;
}

bool Lattice::contains(const Lattice& other) const {
  for (const auto& b : other.basis_)
    if (!contains(b)) return false;
  return true;
}

Quat Lattice::element(const std::array<i64, 4>& coords) const {
  Quat r;
  for (std::size_t i = 0; i < 4; ++i)
    if (coords[i] != 0) r = r + basis_[i].scaled(coords[i]);
  return r;
}

Matrix4 Lattice::gram(const QuaternionAlgebra& A) const {
  Matrix4 G{};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i; j < 4; ++j) G[i][j] = G[j][i] = bilinear(A, basis_[i], basis_[j]);
  return G;
}

Rational Lattice::covolume() const {
  Rational v = 1;
  for (std::size_t i = 0; i < 4; ++i) v *= basis_[i].x[i];
  return v.sign() < 0 ? -v : v;
}

Lattice Lattice::scaled(const Rational& r) const {
  std::vector<Quat> gens;
  for (const auto& b : basis_) gens.push_back(b.scaled(r));
  return from_generators(gens);
}

Lattice Lattice::conj() const {
  std::vector<Quat> gens;
  for (const auto& b : basis_) gens.push_back(b.conj());
  return from_generators(gens);
}

std::ostream& operator<<(std::ostream& os, const Lattice& L) {
  os << "{";
  for (std::size_t i = 0; i < 4; ++i) os << (i ? ", " : "") << L.basis_[i];
  return os << "}";
}

Lattice lattice_product(const QuaternionAlgebra& A, const Lattice& L, const Lattice& M) {
  std::vector<Quat> gens;
  gens.reserve(16);
  for (const auto& x : L.basis())
    for (const auto& y : M.basis()) gens.push_back(multiply(A, x, y));
  return Lattice::from_generators(gens);
}

IntMatrix integral_gram(const Matrix4& gram, const Rational& scale) {
  IntMatrix G(4, std::vector<i64>(4));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      Rational v = gram[i][j] / scale;
      if (!v.is_integer()) throw CertificationError("scaled Gram matrix is not integral");
      G[i][j] = narrow(v.num());
    }
  return G;
}

// ---------------------------------------------------------------- enumeration

namespace {

struct Enumerator {
  std::size_t n;
  std::vector<std::vector<Rational>> q;  // Fincke-Pohst coefficients
  const IntMatrix& G;
  i64 bound;
  const std::function<bool(const std::vector<i64>&, i64)>& visit;
  bool half;
  bool skip_zero;
  std::vector<i64> x;
  bool stopped = false;

  i64 value() const {
    i128 v = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) v += static_cast<i128>(G[i][j]) * x[i] * x[j];
    return narrow(v);
  }

  // Level i: coordinates i+1..n-1 fixed, `remaining` = bound - partial sum.
  void recurse(std::size_t i, const Rational& remaining, bool higher_zero) {
    if (stopped) return;
    Rational center = 0;
    for (std::size_t j = i + 1; j < n; ++j)
      if (x[j] != 0) center -= q[i][j] * x[j];
    const Rational& qii = q[i][i];
    auto fits = [&](i128 t, Rational& rest) {
      Rational d = Rational(t) - center;
      rest = remaining - qii * d * d;
      return rest.sign() >= 0;
    };
    // Start at the integer nearest the center, walk outward in both directions.
    const i128 start = (center + Rational(1, 2)).floor();
    Rational rest;
    for (int dir : {0, 1}) {
      for (i128 t = (dir == 0 ? start : start - 1);; t += (dir == 0 ? 1 : -1)) {
        if (!fits(t, rest)) {
          // Past the ellipsoid on this side once we are beyond the center.
          if ((dir == 0 && Rational(t) >= center) || (dir == 1 && Rational(t) <= center)) break;
          continue;
        }
        if (half && higher_zero && t < 0) {
          if (dir == 1) break;
          continue;
        }
        x[i] = narrow(t);
        if (i == 0) {
          const bool zero = higher_zero && t == 0;
          if (!(zero && skip_zero)) {
            if (!visit(x, value())) {
              stopped = true;
              return;
            }
          }
        } else {
          recurse(i - 1, rest, higher_zero && t == 0);
        }
        if (stopped) return;
      }
    }
    x[i] = 0;
  }
};

}  // namespace

void enumerate_short_vectors(const IntMatrix& G, i64 bound,
                             const std::function<bool(const std::vector<i64>&, i64)>& visit, bool half,
                             bool skip_zero) {
  const std::size_t n = G.size();
  if (bound < 0) return;
  std::vector<std::vector<Rational>> q(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) q[i][j] = G[i][j];
  for (std::size_t i = 0; i < n; ++i) {
    if (q[i][i].sign() <= 0) throw PreconditionError("Gram matrix is not positive definite");
    for (std::size_t j = i + 1; j < n; ++j) {
      q[j][i] = q[i][j];
      q[i][j] = q[i][j] / q[i][i];
    }
    for (std::size_t k = i + 1; k < n; ++k)
      for (std::size_t l = k; l < n; ++l) q[k][l] -= q[k][i] * q[i][l];
  }
  Enumerator e{n, q, G, bound, visit, half, skip_zero, std::vector<i64>(n, 0)};
  if (n == 0) {
    if (!skip_zero) visit({}, 0);
    return;
  }
  e.recurse(n - 1, Rational(bound), true);
}

std::vector<i64> theta_series(const IntMatrix& G, i64 max_norm) {
  std::vector<i64> counts(static_cast<std::size_t>(max_norm) + 1, 0);
  counts[0] = 1;
  enumerate_short_vectors(
      G, 2 * max_norm,
      [&](const std::vector<i64>&, i64 v) {
        if (v % 2 != 0) throw CertificationError("theta_series: form is not even");
        counts[static_cast<std::size_t>(v / 2)] += 2;
        return true;
      },
      /*half=*/true, /*skip_zero=*/true);
  return counts;
}

}  // namespace tpl
