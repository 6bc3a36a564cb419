#include "tpl/finite_field.hpp"

#include <string>

namespace tpl {

namespace fp_poly {

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly add(const Poly& f, const Poly& g, i64 p) {
  Poly r(std::max(f.size(), g.size()), 0);
  for (std::size_t i = 0; i < f.size(); ++i) r[i] = f[i];
  for (std::size_t i = 0; i < g.size(); ++i) r[i] = (r[i] + g[i]) % p;
  trim(r);
  return r;
}

Poly sub(const Poly& f, const Poly& g, i64 p) {
  Poly r(std::max(f.size(), g.size()), 0);
  for (std::size_t i = 0; i < f.size(); ++i) r[i] = f[i];
  for (std::size_t i = 0; i < g.size(); ++i) r[i] = mod(r[i] - g[i], p);
  trim(r);
  return r;
}

Poly mul(const Poly& f, const Poly& g, i64 p) {
  if (f.empty() || g.empty()) return {};
  Poly r(f.size() + g.size() - 1, 0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] == 0) continue;
    for (std::size_t j = 0; j < g.size(); ++j) r[i + j] = (r[i + j] + f[i] * g[j]) % p;
  }
  trim(r);
  return r;
}

Poly rem(const Poly& f, const Poly& g, i64 p) {
  if (g.empty()) throw PreconditionError("polynomial division by zero");
  Poly r = f;
  trim(r);
  const i64 lead_inv = inverse_mod(g.back(), p);
  while (r.size() >= g.size()) {
    const i64 coef = (r.back() * lead_inv) % p;
    const std::size_t shift = r.size() - g.size();
    for (std::size_t j = 0; j < g.size(); ++j) r[shift + j] = mod(r[shift + j] - coef * g[j], p);
    trim(r);
  }
  return r;
}

Poly gcd(Poly f, Poly g, i64 p) {
  trim(f);
  trim(g);
  while (!g.empty()) {
    Poly r = rem(f, g, p);
    f = std::move(g);
    g = std::move(r);
  }
  if (!f.empty()) {
    const i64 inv = inverse_mod(f.back(), p);
    for (auto& c : f) c = (c * inv) % p;
  }
  return f;
}

Poly mulmod(const Poly& f, const Poly& g, const Poly& m, i64 p) { return rem(mul(f, g, p), m, p); }

Poly powmod(Poly base, const BigInt& e, const Poly& m, i64 p) {
  Poly result{1};
  result = rem(result, m, p);
  base = rem(base, m, p);
  const auto bits = e == 0 ? 0u : static_cast<unsigned>(boost::multiprecision::msb(e)) + 1;
  for (unsigned i = bits; i-- > 0;) {
    result = mulmod(result, result, m, p);
    if (boost::multiprecision::bit_test(e, i)) result = mulmod(result, base, m, p);
  }
  return result;
}

bool is_irreducible(const Poly& f, i64 p) {
  const int k = static_cast<int>(f.size()) - 1;
  if (k < 1) return false;
  if (k == 1) return true;
  const Poly x{0, 1};
  // frob[m] = x^(p^m) mod f
  std::vector<Poly> frob{rem(x, f, p)};
  for (int m = 1; m <= k; ++m) frob.push_back(powmod(frob.back(), BigInt(p), f, p));
  if (sub(frob[static_cast<std::size_t>(k)], x, p) != Poly{}) return false;
  for (i64 r : prime_divisors(k)) {
    Poly h = sub(frob[static_cast<std::size_t>(k / r)], x, p);
    Poly g = gcd(f, h, p);
    if (g.size() != 1) return false;
  }
  return true;
}

}  // namespace fp_poly

namespace {

// Odometer over coefficient tuples in lexicographic order, c_0 most significant.
bool next_tuple(std::vector<i64>& c, i64 p) {
  for (std::size_t i = c.size(); i-- > 0;) {
    if (++c[i] < p) return true;
    c[i] = 0;
  }
  return false;
}

}  // namespace

FieldEmbedding::FieldEmbedding(i64 p, i64 n) : p_(p), n_(n) {
  if (!is_prime(p)) throw PreconditionError("field characteristic must be prime: " + std::to_string(p));
  if (n < 1) throw PreconditionError("root-of-unity order must be positive");
  if (n % p == 0) throw PreconditionError("p divides the root-of-unity order n = " + std::to_string(n));
  k_ = static_cast<int>(multiplicative_order(p, n));

  // Smallest monic irreducible of degree k, coefficients compared low to high.
  std::vector<i64> low(static_cast<std::size_t>(k_), 0);
  if (k_ > 1) low[0] = 1;
  for (;;) {
    fp_poly::Poly f = low;
    f.push_back(1);
    if (fp_poly::is_irreducible(f, p)) {
      modulus_ = f;
      break;
    }
    if (!next_tuple(low, p)) throw CertificationError("no irreducible polynomial found");
  }

  // zeta = x^((p^k - 1) / n) for the smallest x giving exact order n.
  const BigInt cofactor = (field_size() - 1) / n;
  std::vector<i64> cand(static_cast<std::size_t>(k_), 0);
  FieldElem zeta;
  bool found = false;
  while (next_tuple(cand, p)) {
    FieldElem x{cand};
    FieldElem y = pow(x, cofactor);
    if (has_exact_order(y, n)) {
      zeta = y;
      found = true;
      break;
    }
  }
  if (!found) throw CertificationError("no element of exact order n in F_{p^k}");
  zeta_pows_.push_back(one());
  for (i64 e = 1; e < n; ++e) zeta_pows_.push_back(mul(zeta_pows_.back(), zeta));
}

BigInt FieldEmbedding::field_size() const {
  BigInt q = 1;
  for (int i = 0; i < k_; ++i) q *= p_;
  return q;
}

FieldElem FieldEmbedding::from_poly(fp_poly::Poly f) const {
  f = fp_poly::rem(f, modulus_, p_);
  f.resize(static_cast<std::size_t>(k_), 0);
  return FieldElem{std::move(f)};
}

FieldElem FieldEmbedding::from_int(i64 v) const {
  FieldElem x = zero();
  x.c[0] = mod(v, p_);
  return x;
}

bool FieldEmbedding::is_zero(const FieldElem& x) const {
  for (i64 c : x.c)
    if (c != 0) return false;
  return true;
}

FieldElem FieldEmbedding::add(const FieldElem& x, const FieldElem& y) const {
  FieldElem r = zero();
  for (int i = 0; i < k_; ++i) r.c[static_cast<std::size_t>(i)] = (x.c[static_cast<std::size_t>(i)] + y.c[static_cast<std::size_t>(i)]) % p_;
  return r;
}

FieldElem FieldEmbedding::sub(const FieldElem& x, const FieldElem& y) const {
  FieldElem r = zero();
  for (int i = 0; i < k_; ++i) r.c[static_cast<std::size_t>(i)] = mod(x.c[static_cast<std::size_t>(i)] - y.c[static_cast<std::size_t>(i)], p_);
  return r;
}

FieldElem FieldEmbedding::neg(const FieldElem& x) const { return sub(zero(), x); }

FieldElem FieldEmbedding::mul(const FieldElem& x, const FieldElem& y) const {
  fp_poly::Poly a = x.c, b = y.c;
  fp_poly::trim(a);
  fp_poly::trim(b);
  return from_poly(fp_poly::mul(a, b, p_));
}

FieldElem FieldEmbedding::pow(const FieldElem& x, const BigInt& e) const {
  fp_poly::Poly a = x.c;
  fp_poly::trim(a);
  return from_poly(fp_poly::powmod(a, e, modulus_, p_));
}

FieldElem FieldEmbedding::inv(const FieldElem& x) const {
  if (is_zero(x)) throw PreconditionError("inverse of zero in finite field");
  return pow(x, field_size() - 2);
}

bool FieldEmbedding::in_subfield(const FieldElem& x, int d) const {
  BigInt pd = 1;
  for (int i = 0; i < d; ++i) pd *= p_;
  return pow(x, pd) == x;
}

bool FieldEmbedding::has_exact_order(const FieldElem& x, i64 m) const {
  if (is_zero(x)) return false;
  if (pow(x, BigInt(m)) != one()) return false;
  if (m == 1) return true;
  for (i64 r : prime_divisors(m))
    if (pow(x, BigInt(m / r)) == one()) return false;
  return true;
}

}  // namespace tpl
