#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "tpl/error.hpp"

namespace tpl {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;

// Overflow-checked 128-bit primitives. Every exact computation in the
// library funnels through these; an overflow is a CertificationError.
i128 checked_add(i128 a, i128 b);
i128 checked_mul(i128 a, i128 b);
i128 gcd128(i128 a, i128 b);
std::string to_string(i128 v);

i64 gcd(i64 a, i64 b);
i64 lcm(i64 a, i64 b);

/// Extended gcd: returns g = gcd(a, b) >= 0 and sets u, v with u*a + v*b = g.
i64 xgcd(i64 a, i64 b, i64& u, i64& v);

/// Non-negative residue of a modulo m (m > 0).
i64 mod(i64 a, i64 m);
u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 base, u64 exp, u64 m);
i64 inverse_mod(i64 a, i64 m);

i64 isqrt(i64 n);
bool is_square(i64 n);
bool is_prime(i64 n);
std::vector<i64> primes_up_to(i64 bound);

/// Prime factorization by trial division: prime -> exponent.
std::map<i64, int> factor(i64 n);
std::vector<i64> prime_divisors(i64 n);
std::vector<i64> divisors(i64 n);
bool is_squarefree(i64 n);

i64 euler_phi(i64 n);
i64 sigma1(i64 n);

/// Multiplicative order of a modulo n; requires gcd(a, n) = 1 and n >= 1.
i64 multiplicative_order(i64 a, i64 n);

/// p-adic valuation of n != 0.
int valuation(i64 n, i64 p);

/// Kronecker symbol (a | n) for any integer n.
int kronecker(i64 a, i64 n);

/// Exact rational number with 128-bit numerator and denominator, always
/// normalized (den > 0, gcd(num, den) = 1). Arithmetic is overflow-checked.
class Rational {
 public:
  Rational() = default;
  Rational(i128 n) : num_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(int n) : num_(n) {}   // NOLINT(google-explicit-constructor)
  Rational(i64 n) : num_(n) {}   // NOLINT(google-explicit-constructor)
  Rational(i128 n, i128 d);

  i128 num() const { return num_; }
  i128 den() const { return den_; }
  bool is_integer() const { return den_ == 1; }
  bool is_zero() const { return num_ == 0; }
  int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

  /// Largest integer <= *this.
  i128 floor() const;
  i128 ceil() const;
  double to_double() const;
  std::string str() const;

  Rational operator-() const { return Rational(-num_, den_, NoNormalize{}); }
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b);
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  struct NoNormalize {};
  Rational(i128 n, i128 d, NoNormalize) : num_(n), den_(d) {}

  i128 num_ = 0;
  i128 den_ = 1;
};

/// Narrow an i128 to i64, throwing CertificationError if it does not fit.
i64 narrow(i128 v);

}  // namespace tpl
