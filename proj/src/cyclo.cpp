#include "tpl/cyclo.hpp"

#include <map>
#include <mutex>

namespace tpl {

namespace {

std::vector<i64> poly_exact_div(std::vector<i64> num, const std::vector<i64>& den) {
  // den is monic.
  std::vector<i64> q(num.size() - den.size() + 1, 0);
  for (std::size_t i = q.size(); i-- > 0;) {
    i64 coef = num[i + den.size() - 1];
    q[i] = coef;
    for (std::size_t j = 0; j < den.size(); ++j) num[i + j] -= coef * den[j];
  }
  for (i64 r : num)
    if (r != 0) throw CertificationError("cyclotomic polynomial division left a remainder");
  return q;
}

}  // namespace

const std::vector<i64>& cyclotomic_polynomial(i64 n) {
  static std::map<i64, std::vector<i64>> cache;
  static std::recursive_mutex mu;
  std::lock_guard<std::recursive_mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<i64> f(static_cast<std::size_t>(n) + 1, 0);
  f[0] = -1;
  f[static_cast<std::size_t>(n)] = 1;
  for (i64 d : divisors(n))
    if (d != n) f = poly_exact_div(f, cyclotomic_polynomial(d));
  return cache.emplace(n, std::move(f)).first->second;
}

std::vector<i64> CycloInt::reduce_poly(i64 n, std::vector<i128> coeffs) {
  const std::vector<i64>& phi = cyclotomic_polynomial(n);
  const std::size_t deg = phi.size() - 1;
  for (std::size_t i = coeffs.size(); i-- > deg;) {
    i128 coef = coeffs[i];
    if (coef == 0) continue;
    for (std::size_t j = 0; j <= deg; ++j)
      coeffs[i - deg + j] = checked_add(coeffs[i - deg + j], -checked_mul(coef, phi[j]));
  }
  std::vector<i64> out(deg, 0);
  for (std::size_t i = 0; i < deg && i < coeffs.size(); ++i) out[i] = narrow(coeffs[i]);
  return out;
}

CycloInt::CycloInt(i64 n) : n_(n), c_(static_cast<std::size_t>(euler_phi(n)), 0) {}

CycloInt CycloInt::from_group_ring(i64 n, const std::vector<i64>& coeffs) {
  CycloInt r(n);
  std::vector<i128> wide(coeffs.begin(), coeffs.end());
  r.c_ = reduce_poly(n, std::move(wide));
  return r;
}

CycloInt CycloInt::monomial(i64 n, i64 exponent, i64 coefficient) {
  std::vector<i64> coeffs(static_cast<std::size_t>(n), 0);
  coeffs[static_cast<std::size_t>(mod(exponent, n))] = coefficient;
  return from_group_ring(n, coeffs);
}

CycloInt CycloInt::integer(i64 n, i64 value) {
  CycloInt r(n);
  r.c_[0] = value;
  return r;
}

bool CycloInt::is_zero() const {
  for (i64 c : c_)
    if (c != 0) return false;
  return true;
}

bool CycloInt::as_integer(i64& out) const {
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  out = c_[0];
  return true;
}

CycloInt CycloInt::operator+(const CycloInt& o) const {
  if (o.n_ != n_) throw PreconditionError("cyclotomic orders differ");
  CycloInt r(n_);
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = narrow(checked_add(c_[i], o.c_[i]));
  return r;
}

CycloInt CycloInt::operator-(const CycloInt& o) const { return *this + o.scaled(-1); }

CycloInt CycloInt::operator*(const CycloInt& o) const {
  if (o.n_ != n_) throw PreconditionError("cyclotomic orders differ");
  std::vector<i128> prod(c_.size() + o.c_.size(), 0);
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) prod[i + j] = checked_add(prod[i + j], checked_mul(c_[i], o.c_[j]));
  CycloInt r(n_);
  r.c_ = reduce_poly(n_, std::move(prod));
  return r;
}

CycloInt CycloInt::scaled(i64 s) const {
  CycloInt r(n_);
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = narrow(checked_mul(c_[i], s));
  return r;
}

FieldElem CycloInt::reduce(const FieldEmbedding& emb) const {
  if (emb.n() != n_) throw PreconditionError("embedding order does not match cyclotomic order");
  FieldElem acc = emb.zero();
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    acc = emb.add(acc, emb.mul(emb.from_int(c_[i]), emb.zeta_pow(static_cast<i64>(i))));
  }
  return acc;
}

std::ostream& operator<<(std::ostream& os, const CycloInt& x) {
  os << "[";
  for (std::size_t i = 0; i < x.c_.size(); ++i) os << (i ? "," : "") << x.c_[i];
  return os << "]";
}

}  // namespace tpl
