#include "tpl/bsd_ledger.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace tpl {

namespace {

i64 weierstrass(const EllipticCurveData& E, i64 x, i64 y, i64 ell) {
  const i128 v = static_cast<i128>(y) * y + static_cast<i128>(E.a1) * x * y + static_cast<i128>(E.a3) * y -
                 static_cast<i128>(x) * x * x - static_cast<i128>(E.a2) * x * x - static_cast<i128>(E.a4) * x - E.a6;
  return static_cast<i64>(((v % ell) + ell) % ell);
}

// Quadratic character table mod an odd prime.
std::vector<int> legendre_table(i64 ell) {
  std::vector<int> chi(static_cast<std::size_t>(ell), -1);
  chi[0] = 0;
  for (i64 y = 1; y < ell; ++y) chi[static_cast<std::size_t>(y * y % ell)] = 1;
  return chi;
}

double pairwise_sum(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
  if (hi - lo <= 8) {
    double s = 0;
    for (std::size_t i = lo; i < hi; ++i) s += v[i];
    return s;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

}  // namespace

i128 EllipticCurveData::discriminant() const {
  const i128 B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
  return -B2 * B2 * B8 - 8 * B4 * B4 * B4 - 27 * B6 * B6 + 9 * B2 * B4 * B6;
}

EllipticCurveData make_curve(const std::array<i64, 5>& a, const std::map<i64, i64>& tamagawa) {
  EllipticCurveData E;
  E.a1 = a[0];
  E.a2 = a[1];
  E.a3 = a[2];
  E.a4 = a[3];
  E.a6 = a[4];
  const i128 disc = E.discriminant();
  if (disc == 0) throw PreconditionError("singular Weierstrass equation");
  const auto bad = prime_divisors(narrow(disc < 0 ? -disc : disc));
  if (bad.size() != 1) throw PreconditionError("curve must have exactly one prime of bad reduction");
  E.N = bad.front();
  if (mod(E.c4(), E.N) == 0) throw PreconditionError("reduction at the bad prime is additive");
  E.tamagawa = tamagawa;
  for (const auto& [ell, c] : tamagawa)
    if (ell != E.N) throw PreconditionError("Tamagawa number given for a prime not dividing N");
  E.d_factors[E.N] = 1;
  return E;
}

EllipticCurveData parse_curve(const std::string& text, const std::map<i64, i64>& tamagawa) {
  std::array<i64, 5> a{};
  std::stringstream ss(text);
  std::string item;
  std::size_t k = 0;
  while (std::getline(ss, item, ',')) {
    if (k >= 5) throw ConfigError("curve needs exactly five coefficients: " + text);
    try {
      std::size_t used = 0;
      a[k] = std::stoll(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("bad curve coefficient '" + item + "'");
    }
    ++k;
  }
  if (k != 5) throw ConfigError("curve needs exactly five coefficients: " + text);
  return make_curve(a, tamagawa);
}

i64 count_points(const EllipticCurveData& E, i64 ell) {
  i64 count = 1;
  for (i64 x = 0; x < ell; ++x)
    for (i64 y = 0; y < ell; ++y)
      if (weierstrass(E, x, y, ell) == 0) ++count;
  return count;
}

i64 ap(const EllipticCurveData& E, i64 ell) {
  if (!is_prime(ell)) throw PreconditionError("ap: l must be prime");
  const i128 disc = E.discriminant();
  if (disc % ell != 0) return ell + 1 - count_points(E, ell);
  if (ell != E.N) throw PreconditionError("bad reduction at a prime other than N");
  // Locate the node and test whether the tangent slopes m^2 + a1 m - (3 x0 + a2) = 0 lie in F_l.
  for (i64 x = 0; x < ell; ++x)
    for (i64 y = 0; y < ell; ++y) {
      if (weierstrass(E, x, y, ell) != 0) continue;
      const i64 fx = mod(E.a1 * y - 3 * x * x - 2 * E.a2 * x - E.a4, ell);
      const i64 fy = mod(2 * y + E.a1 * x + E.a3, ell);
      if (fx != 0 || fy != 0) continue;
      const i64 c = mod(-(3 * x + E.a2), ell);
      int roots = 0;
      bool repeated = false;
      for (i64 m = 0; m < ell; ++m)
        if (mod(m * m + E.a1 * m + c, ell) == 0) {
          ++roots;
          repeated = repeated || mod(2 * m + E.a1, ell) == 0;
        }
      if (repeated) throw PreconditionError("additive reduction");
      return roots > 0 ? 1 : -1;
    }
  throw CertificationError("no singular point found at the bad prime");
}

i64 ap_character_sum(const EllipticCurveData& E, i64 ell) {
  if (!is_prime(ell)) throw PreconditionError("ap: l must be prime");
  if (ell == 2) {
    i64 count = 1;
    for (i64 x = 0; x < 2; ++x) {
      const i64 B = mod(E.a1 * x + E.a3, 2);
      const i64 C = mod(x + E.a2 * x + E.a4 * x + E.a6, 2);
      count += B == 0 ? 1 : (C == 0 ? 2 : 0);
    }
    return 3 - count;
  }
  const auto chi = legendre_table(ell);
  const i64 b2 = mod(E.b2(), ell), b4 = mod(E.b4(), ell), b6 = mod(E.b6(), ell);
  i64 s = 0;
  for (i64 x = 0; x < ell; ++x) {
    const i64 v = ((4 * x % ell * x % ell * x + b2 * x % ell * x + 2 * b4 * x + b6) % ell + ell) % ell;
    s += chi[static_cast<std::size_t>(v)];
  }
  return -s;
}

std::vector<i64> an_table(const EllipticCurveData& E, i64 nmax) {
  std::vector<i64> a(static_cast<std::size_t>(nmax) + 1, 0);
  if (nmax >= 1) a[1] = 1;
  std::vector<i64> spf(static_cast<std::size_t>(nmax) + 1, 0);
  for (i64 i = 2; i <= nmax; ++i)
    if (spf[static_cast<std::size_t>(i)] == 0)
      for (i64 j = i; j <= nmax; j += i)
        if (spf[static_cast<std::size_t>(j)] == 0) spf[static_cast<std::size_t>(j)] = i;
  for (i64 n = 2; n <= nmax; ++n) {
    const i64 ell = spf[static_cast<std::size_t>(n)];
    i64 m = n, pk = 1;
    while (m % ell == 0) {
      m /= ell;
      pk *= ell;
    }
    if (m > 1) {
      a[static_cast<std::size_t>(n)] = a[static_cast<std::size_t>(pk)] * a[static_cast<std::size_t>(m)];
    } else if (pk == ell) {
      a[static_cast<std::size_t>(n)] = E.discriminant() % ell == 0 ? ap(E, ell) : ap_character_sum(E, ell);
    } else {
      const i64 al = a[static_cast<std::size_t>(ell)];
      const i64 prev = a[static_cast<std::size_t>(pk / ell)];
      a[static_cast<std::size_t>(n)] = ell == E.N ? al * prev : al * prev - ell * a[static_cast<std::size_t>(pk / ell / ell)];
    }
  }
  return a;
}

std::set<i64> excluded_primes(const EllipticCurveData& E) {
  i128 prod = 6 * static_cast<i128>(E.N);
  for (i64 ell : prime_divisors(E.N)) {
    auto c = E.tamagawa.find(ell);
    if (c == E.tamagawa.end()) throw PreconditionError("missing Tamagawa number c_" + std::to_string(ell));
    auto d = E.d_factors.find(ell);
    prod = checked_mul(prod, static_cast<i128>(ell) * ell - 1);
    prod = checked_mul(prod, c->second);
    prod = checked_mul(prod, d == E.d_factors.end() ? 1 : d->second);
  }
  auto ps = prime_divisors(narrow(prod));
  return std::set<i64>(ps.begin(), ps.end());
}

IdealGcd ideal_I_gcd(const EllipticCurveData& E, i64 bound) {
  if (bound < 3) throw PreconditionError("ideal_I_gcd: bound must be at least 3");
  IdealGcd r;
  for (i64 ell : primes_up_to(bound)) {
    if (ell == E.N) continue;
    const i64 g = gcd(r.gcd, ell + 1 - ap(E, ell));
    if (g != r.gcd || r.stable_from == 0) r.stable_from = ell;
    r.gcd = g;
  }
  return r;
}

i64 kolyvagin_exponent(const std::array<i64, 6>& C, i64 I, i64 h, i64 p) {
  for (i64 c : C)
    if (c < 0) throw PreconditionError("Kolyvagin constants must be nonnegative");
  if (I <= 0 || h <= 0) throw PreconditionError("I and h must be positive");
  if (!is_prime(p)) throw PreconditionError("p must be prime");
  static constexpr std::array<i64, 6> coeff{3, 12, 1, 1, 1, 1};
  i64 e = 0;
  for (std::size_t i = 0; i < 6; ++i) e += coeff[i] * C[i];
  return e + valuation(I, p) + 2 * valuation(h, p);
}

i64 sha_exponent(i64 ordP, const std::vector<i64>& split_tamagawa_ords) {
  i64 s = 0;
  for (i64 o : split_tamagawa_ords) s += o;
  return 2 * ordP - 2 * s;
}

Pairings pairings(const std::vector<i64>& f1, const std::vector<i64>& f2, const std::vector<i64>& weights,
                  const std::vector<std::size_t>& tau) {
  if (f1.size() != weights.size() || f2.size() != weights.size() || tau.size() != weights.size())
    throw PreconditionError("pairings: functions must live on the same class set");
  Pairings r;
  for (std::size_t x = 0; x < weights.size(); ++x) {
    r.bracket += Rational(f1[x]) * f2[tau[x]] / Rational(weights[x]);
    r.paren += Rational(f1[x]) * f2[x] / Rational(weights[x]);
  }
  return r;
}

int root_number(const EllipticCurveData& E, i64 D) {
  const int w = static_cast<int>(ap(E, E.N));
  if (D == 1) return w;
  if (gcd(D, E.N) != 1) throw PreconditionError("twist discriminant must be coprime to N");
  const int chi_minus_one = D < 0 ? -1 : 1;
  return w * chi_minus_one * kronecker(D, E.N);
}

LValue central_lvalue(const EllipticCurveData& E, i64 D, i64 terms, double tolerance) {
  if (terms < 1) throw PreconditionError("need at least one term");
  if (D != 1 && !(D < 0 && D % E.N != 0)) throw PreconditionError("twist must be 1 or a negative discriminant prime to N");
  LValue L;
  L.terms = terms;
  L.root_number = root_number(E, D);
  if (L.root_number == -1) return L;
  const double c = 2 * std::numbers::pi / std::sqrt(static_cast<double>(E.N) * static_cast<double>(D) * static_cast<double>(D));
  L.tail_bound = 4 * std::exp(-c * static_cast<double>(terms + 1)) / (1 - std::exp(-c));
  if (tolerance > 0 && L.tail_bound > tolerance)
    throw PreconditionError("too few terms: tail bound " + std::to_string(L.tail_bound) + " exceeds tolerance");
  const auto a = an_table(E, terms);
  std::vector<double> t(static_cast<std::size_t>(terms), 0.0);
  for (i64 n = 1; n <= terms; ++n) {
    const int chi = D == 1 ? 1 : kronecker(D, n);
    if (chi == 0 || a[static_cast<std::size_t>(n)] == 0) continue;
    t[static_cast<std::size_t>(n - 1)] =
        2.0 * static_cast<double>(a[static_cast<std::size_t>(n)] * chi) / static_cast<double>(n) * std::exp(-c * static_cast<double>(n));
  }
  L.value = pairwise_sum(t, 0, t.size());
  // A few ulps per term for exp and the products, plus log2(T) ulps of
  // pairwise summation, relative to sum |t_n|.
  double abs_sum = 0;
  for (double x : t) abs_sum += std::fabs(x);
  const double ulps = 8 + std::ceil(std::log2(static_cast<double>(terms) + 1));
  L.rounding_bound = ulps * std::numeric_limits<double>::epsilon() * abs_sum;
  return L;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::consistent: return "consistent";
    case Verdict::inconsistent: return "inconsistent";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

WaldspurgerReport waldspurger_consistency(i64 period_times_h, const LValue& LE, const LValue& LED) {
  WaldspurgerReport r;
  r.period_nonzero = period_times_h != 0;
  r.lproduct = LE.value * LED.value;
  const double eE = LE.error_bound(), eD = LED.error_bound();
  r.tolerance = 10 * (std::fabs(LE.value) * eD + std::fabs(LED.value) * eE + eE * eD);
  const bool l_nonzero = std::fabs(r.lproduct) > r.tolerance;
  if (l_nonzero == r.period_nonzero)
    r.verdict = Verdict::consistent;
  else if (!l_nonzero)
    r.verdict = Verdict::inconclusive;
  else
    r.verdict = Verdict::inconsistent;
  return r;
}

}  // namespace tpl
