#include "tpl/arith.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tpl {

i128 checked_add(i128 a, i128 b) {
  i128 r;
  if (__builtin_add_overflow(a, b, &r)) throw CertificationError("128-bit overflow in addition");
  return r;
}

i128 checked_mul(i128 a, i128 b) {
  i128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw CertificationError("128-bit overflow in multiplication");
  return r;
}

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::string to_string(i128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  std::string s;
  // Work with negative values so INT128_MIN is handled.
  if (!neg) v = -v;
  while (v != 0) {
    int digit = -static_cast<int>(v % 10);
    s.push_back(static_cast<char>('0' + digit));
    v /= 10;
  }
  if (neg) s.push_back('-');
  std::reverse(s.begin(), s.end());
  return s;
}

i64 narrow(i128 v) {
  if (v > std::numeric_limits<i64>::max() || v < std::numeric_limits<i64>::min())
    throw CertificationError("value does not fit in 64 bits: " + to_string(v));
  return static_cast<i64>(v);
}

i64 gcd(i64 a, i64 b) { return static_cast<i64>(gcd128(a, b)); }

i64 lcm(i64 a, i64 b) {
  if (a == 0 || b == 0) return 0;
  return narrow(checked_mul(a / gcd(a, b), b < 0 ? -b : b));
}

i64 xgcd(i64 a, i64 b, i64& u, i64& v) {
  i64 old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    i64 q = old_r / r;
    i64 tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  u = old_s;
  v = old_t;
  return old_r;
}

i64 mod(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m); }

u64 powmod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

i64 inverse_mod(i64 a, i64 m) {
  i64 u, v;
  i64 g = xgcd(mod(a, m), m, u, v);
  if (g != 1) throw PreconditionError("element not invertible modulo " + std::to_string(m));
  return mod(u, m);
}

i64 isqrt(i64 n) {
  if (n < 0) throw PreconditionError("isqrt of negative number");
  auto r = static_cast<i64>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && static_cast<i128>(r) * r > n) --r;
  while (static_cast<i128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool is_square(i64 n) {
  if (n < 0) return false;
  i64 r = isqrt(n);
  return r * r == n;
}

bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  // Deterministic Miller-Rabin for 64-bit inputs.
  u64 d = static_cast<u64>(n) - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = powmod(a, d, static_cast<u64>(n));
    if (x == 1 || x == static_cast<u64>(n) - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, static_cast<u64>(n));
      if (x == static_cast<u64>(n) - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<i64> primes_up_to(i64 bound) {
  std::vector<i64> out;
  if (bound < 2) return out;
  std::vector<bool> sieve(static_cast<std::size_t>(bound) + 1, true);
  for (i64 i = 2; i <= bound; ++i) {
    if (!sieve[static_cast<std::size_t>(i)]) continue;
    out.push_back(i);
    for (i64 j = i * i; j <= bound; j += i) sieve[static_cast<std::size_t>(j)] = false;
  }
  return out;
}

std::map<i64, int> factor(i64 n) {
  std::map<i64, int> out;
  if (n < 0) n = -n;
  if (n == 0) throw PreconditionError("cannot factor zero");
  for (i64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    while (n % p == 0) {
      ++out[p];
      n /= p;
    }
  }
  if (n > 1) ++out[n];
  return out;
}

std::vector<i64> prime_divisors(i64 n) {
  std::vector<i64> out;
  for (auto [p, e] : factor(n)) out.push_back(p);
  return out;
}

std::vector<i64> divisors(i64 n) {
  std::vector<i64> out{1};
  for (auto [p, e] : factor(n)) {
    std::size_t base = out.size();
    i64 pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_squarefree(i64 n) {
  if (n == 0) return false;
  for (auto [p, e] : factor(n))
    if (e > 1) return false;
  return true;
}

i64 euler_phi(i64 n) {
  i64 r = n;
  for (auto [p, e] : factor(n)) r = r / p * (p - 1);
  return r;
}

i64 sigma1(i64 n) {
  i64 s = 0;
  for (i64 d : divisors(n)) s += d;
  return s;
}

i64 multiplicative_order(i64 a, i64 n) {
  if (n <= 0) throw PreconditionError("multiplicative_order: modulus must be positive");
  if (n == 1) return 1;
  if (gcd(a, n) != 1) throw PreconditionError("multiplicative_order: gcd(a, n) != 1");
  i64 order = euler_phi(n);
  u64 base = static_cast<u64>(mod(a, n));
  for (auto [p, e] : factor(order)) {
    for (int k = 0; k < e; ++k) {
      if (powmod(base, static_cast<u64>(order / p), static_cast<u64>(n)) == 1)
        order /= p;
      else
        break;
    }
  }
  return order;
}

int valuation(i64 n, i64 p) {
  if (n == 0) throw PreconditionError("valuation of zero");
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

int kronecker(i64 a, i64 n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  int result = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) result = -result;
  }
  int v = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++v;
  }
  if (v > 0) {
    if (a % 2 == 0) return 0;
    i64 r8 = mod(a, 8);
    if ((v & 1) && (r8 == 3 || r8 == 5)) result = -result;
  }
  // Jacobi symbol (a | n), n odd positive.
  i64 x = mod(a, n);
  i64 m = n;
  while (x != 0) {
    while (x % 2 == 0) {
      x /= 2;
      i64 r = m % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(x, m);
    if (x % 4 == 3 && m % 4 == 3) result = -result;
    x %= m;
  }
  return m == 1 ? result : 0;
}

// ---------------------------------------------------------------- Rational

Rational::Rational(i128 n, i128 d) {
  if (d == 0) throw PreconditionError("rational with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  i128 g = gcd128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  num_ = n;
  den_ = d;
}

i128 Rational::floor() const {
  i128 q = num_ / den_;
  if (num_ % den_ != 0 && num_ < 0) --q;
  return q;
}

i128 Rational::ceil() const {
  i128 q = num_ / den_;
  if (num_ % den_ != 0 && num_ > 0) ++q;
  return q;
}

double Rational::to_double() const {
  return static_cast<double>(static_cast<long double>(num_) / static_cast<long double>(den_));
}

std::string Rational::str() const {
  if (den_ == 1) return to_string(num_);
  return to_string(num_) + "/" + to_string(den_);
}

Rational& Rational::operator+=(const Rational& o) {
  if (den_ == o.den_) {
    *this = Rational(checked_add(num_, o.num_), den_);
    return *this;
  }
  i128 g = gcd128(den_, o.den_);
  i128 lhs = checked_mul(num_, o.den_ / g);
  i128 rhs = checked_mul(o.num_, den_ / g);
  *this = Rational(checked_add(lhs, rhs), checked_mul(den_ / g, o.den_));
  return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
  i128 g1 = gcd128(num_, o.den_);
  i128 g2 = gcd128(o.num_, den_);
  if (g1 == 0) g1 = 1;
  if (g2 == 0) g2 = 1;
  i128 n = checked_mul(num_ / g1, o.num_ / g2);
  i128 d = checked_mul(den_ / g2, o.den_ / g1);
  *this = Rational(n, d, NoNormalize{});
  if (num_ == 0) den_ = 1;
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.num_ == 0) throw PreconditionError("rational division by zero");
  return *this *= Rational(o.den_, o.num_);
}

bool operator<(const Rational& a, const Rational& b) {
  return checked_mul(a.num_, b.den_) < checked_mul(b.num_, a.den_);
}

}  // namespace tpl
