#pragma once

#include <array>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "tpl/arith.hpp"

namespace tpl {

/// Weierstrass model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6, assumed
/// minimal, with prime conductor N.
struct EllipticCurveData {
  i64 a1 = 0, a2 = 0, a3 = 0, a4 = 0, a6 = 0;
  i64 N = 0;
  std::map<i64, i64> tamagawa;  // l -> c_l
  std::map<i64, i64> d_factors;  // l -> d_l, default 1

  i64 b2() const { return a1 * a1 + 4 * a2; }
  i64 b4() const { return 2 * a4 + a1 * a3; }
  i64 b6() const { return a3 * a3 + 4 * a6; }
  i64 b8() const { return a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4; }
  i64 c4() const { return b2() * b2() - 24 * b4(); }
  i128 discriminant() const;
};

/// Builds a curve from its coefficients; N is the single prime of bad
/// reduction, which must be multiplicative. Throws PreconditionError
/// for singular curves or curves outside that scope.
EllipticCurveData make_curve(const std::array<i64, 5>& a, const std::map<i64, i64>& tamagawa = {});
/// "a1,a2,a3,a4,a6".
EllipticCurveData parse_curve(const std::string& text, const std::map<i64, i64>& tamagawa = {});

/// Trace of Frobenius by exhaustive point count (l good), or +-1 from the
/// node's tangent slopes (l = N).
i64 ap(const EllipticCurveData& E, i64 ell);
/// Independent count: quadratic-character sum for odd l, Artin-Schreier for l = 2.
i64 ap_character_sum(const EllipticCurveData& E, i64 ell);
/// #E(F_l) including the point at infinity and any singular point.
i64 count_points(const EllipticCurveData& E, i64 ell);
/// a_n for n = 0..nmax (a_0 = 0), multiplicative from the prime traces.
std::vector<i64> an_table(const EllipticCurveData& E, i64 nmax);

/// Prime divisors of 6 N prod_{l | N} (l^2 - 1) c_l d_l.
std::set<i64> excluded_primes(const EllipticCurveData& E);

struct IdealGcd {
  i64 gcd = 0;
  i64 stable_from = 0;  // smallest prime after which the running gcd no longer changes
};
/// gcd of l + 1 - a_l over primes l <= bound, l != N.
IdealGcd ideal_I_gcd(const EllipticCurveData& E, i64 bound);

/// 3 C2 + 12 C4 + C5 + C6 + C7 + C8 + v_p(I h) + v_p(h).
i64 kolyvagin_exponent(const std::array<i64, 6>& C, i64 I, i64 h, i64 p);
/// 2 ordP - 2 sum(ords).
i64 sha_exponent(i64 ordP, const std::vector<i64>& split_tamagawa_ords);

struct Pairings {
  Rational bracket;  // sum_x f1(x) f2(x tau) / w_x
  Rational paren;    // sum_x f1(x) f2(x) / w_x
};
Pairings pairings(const std::vector<i64>& f1, const std::vector<i64>& f2, const std::vector<i64>& weights,
                  const std::vector<std::size_t>& tau);

/// Global root number of the twist E_D (D = 1 for E itself).
int root_number(const EllipticCurveData& E, i64 D);

struct LValue {
  double value = 0;
  double tail_bound = 0;      // truncation error
  double rounding_bound = 0;  // floating-point error of the computed partial sum
  i64 terms = 0;
  int root_number = 1;
  double error_bound() const { return tail_bound + rounding_bound; }
};
/// L(E_D, 1) = 2 sum_{n <= terms} a_n chi_D(n)/n exp(-2 pi n / sqrt(N D^2)) when the
/// root number is +1 (else exactly 0). Throws PreconditionError if the tail
/// bound exceeds `tolerance` (when positive).
LValue central_lvalue(const EllipticCurveData& E, i64 D, i64 terms, double tolerance = 0);

enum class Verdict { consistent, inconsistent, inconclusive };
std::string to_string(Verdict v);

struct WaldspurgerReport {
  bool period_nonzero = false;
  double lproduct = 0;
  double tolerance = 0;
  Verdict verdict = Verdict::inconclusive;
};
/// (sum_sigma f(x_sigma) != 0) <=> |L(E,1) L(E_D,1)| > 10 x (error bound of the product).
WaldspurgerReport waldspurger_consistency(i64 period_times_h, const LValue& LE, const LValue& LED);

}  // namespace tpl
