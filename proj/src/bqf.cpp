#include "tpl/bqf.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace tpl {

bool is_fundamental_discriminant(i64 d) {
  if (d == 0 || d == 1) return false;
  i64 r = mod(d, 4);
  if (r == 1) return is_squarefree(d);
  if (r != 0) return false;
  i64 m = d / 4;
  i64 rm = mod(m, 4);
  return (rm == 2 || rm == 3) && is_squarefree(m);
}

Discriminant::Discriminant(i64 d) : d_(d) {
  if (d >= 0) throw PreconditionError("discriminant must be negative: " + std::to_string(d));
  if (!is_fundamental_discriminant(d))
    throw PreconditionError("discriminant is not fundamental: " + std::to_string(d));
}

bool QuadForm::is_reduced() const {
  if (a <= 0) return false;
  if (std::abs(b) > a || a > c) return false;
  if ((std::abs(b) == a || a == c) && b < 0) return false;
  return true;
}

QuadForm reduce(QuadForm f) {
  const i128 D = static_cast<i128>(f.b) * f.b - static_cast<i128>(4) * f.a * f.c;
  if (f.a <= 0 || D >= 0) throw PreconditionError("reduce: form is not positive definite");
  for (;;) {
    // Translate b into (-a, a].
    i128 a = f.a, b = f.b;
    i128 two_a = 2 * a;
    i128 k = (a - b) / two_a;
    if ((a - b) % two_a != 0 && (a - b) < 0) --k;
    b = b + two_a * k;
    i128 c = (b * b - D) / (4 * a);
    f = {narrow(a), narrow(b), narrow(c)};
    if (f.a > f.c) {
      f = {f.c, -f.b, f.a};
      continue;
    }
    break;
  }
  if (f.a == f.c && f.b < 0) f.b = -f.b;
  return f;
}

QuadForm principal_form(const Discriminant& D) {
  i64 t = D.parity();
  return {1, t, (t - D.value()) / 4};
}

QuadForm compose(const QuadForm& f, const QuadForm& g) {
  if (f.discriminant() != g.discriminant())
    throw PreconditionError("compose: discriminants differ");
  const i128 D = f.discriminant();
  QuadForm f1 = f, f2 = g;
  if (f1.a > f2.a) std::swap(f1, f2);
  const i64 s = (f1.b + f2.b) / 2;
  const i64 n = f2.b - s;
  i64 y1, d;
  if (f2.a % f1.a == 0) {
    y1 = 0;
    d = f1.a;
  } else {
    i64 u, v;
    d = xgcd(f2.a, f1.a, u, v);
    y1 = u;
  }
  i64 x2, y2, d1;
  if (s % d == 0) {
    y2 = -1;
    x2 = 0;
    d1 = d;
  } else {
    i64 u, v;
    d1 = xgcd(s, d, u, v);
    x2 = u;
    y2 = -v;
  }
  const i64 v1 = f1.a / d1;
  const i64 v2 = f2.a / d1;
  i128 r = checked_add(checked_mul(checked_mul(y1, y2), n), -checked_mul(x2, f2.c));
  r %= v1;
  if (r < 0) r += v1;
  const i128 b3 = f2.b + 2 * static_cast<i128>(v2) * r;
  const i128 a3 = static_cast<i128>(v1) * v2;
  const i128 c3 = (b3 * b3 - D) / (4 * a3);
  return reduce({narrow(a3), narrow(b3), narrow(c3)});
}

QuadForm inverse(const QuadForm& f) { return reduce({f.a, -f.b, f.c}); }

QuadForm power(const QuadForm& f, i64 n) {
  QuadForm base = n < 0 ? inverse(f) : reduce(f);
  if (n < 0) n = -n;
  const i64 d = f.discriminant();
  QuadForm result{1, mod(d, 2), (mod(d, 2) - d) / 4};
  while (n > 0) {
    if (n & 1) result = compose(result, base);
    base = compose(base, base);
    n >>= 1;
  }
  return result;
}

std::vector<QuadForm> enumerate_reduced_forms(const Discriminant& D) {
  const i64 d = D.value();
  std::vector<QuadForm> out;
  const i64 amax = isqrt(-d / 3);
  for (i64 a = 1; a <= amax; ++a) {
    for (i64 b = -a + 1; b <= a; ++b) {
      i64 num = b * b - d;
      if (num % (4 * a) != 0) continue;
      i64 c = num / (4 * a);
      QuadForm f{a, b, c};
      if (!f.is_reduced()) continue;
      if (gcd(gcd(a, b), c) != 1) continue;
      out.push_back(f);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------- ClassGroup

ClassGroup::ClassGroup(const Discriminant& D) : D_(D), forms_(enumerate_reduced_forms(D)) {
  const std::size_t h = forms_.size();
  table_.resize(h * h);
  for (std::size_t x = 0; x < h; ++x)
    for (std::size_t y = x; y < h; ++y) {
      std::size_t z = index_of(compose(forms_[x], forms_[y]));
      table_[x * h + y] = z;
      table_[y * h + x] = z;
    }
  inverse_.resize(h);
  for (std::size_t x = 0; x < h; ++x) inverse_[x] = index_of(inverse(forms_[x]));

  // Greedy invariant-factor extraction. `member[x]` holds the coordinates of
  // x in the subgroup generated so far (empty if x is not in it).
  std::vector<std::size_t> gens;
  std::vector<i64> orders;
  std::vector<std::vector<i64>> member(h);
  member[identity()] = std::vector<i64>{};
  std::vector<bool> in_subgroup(h, false);
  in_subgroup[identity()] = true;
  std::size_t subgroup_size = 1;

  while (subgroup_size < h) {
    std::size_t best = 0;
    i64 best_order = 0;
    for (std::size_t x = 0; x < h; ++x) {
      i64 m = 1;
      std::size_t y = x;
      while (!in_subgroup[y]) {
        y = multiply(y, x);
        ++m;
      }
      if (m > best_order) {
        best_order = m;
        best = x;
      }
    }
    // best^m lies in the subgroup; divide its coordinates by m to make the
    // new generator independent of the previous ones.
    std::size_t g = best;
    const std::vector<i64> k = member[pow(best, best_order)];
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (k[i] % best_order != 0)
        throw CertificationError("class group decomposition: non-divisible lift coordinate");
      g = multiply(g, pow(gens[i], orders[i] - k[i] / best_order));
    }
    gens.push_back(g);
    orders.push_back(best_order);

    std::fill(in_subgroup.begin(), in_subgroup.end(), false);
    std::vector<i64> e(gens.size(), 0);
    subgroup_size = 0;
    for (;;) {
      std::size_t x = identity();
      for (std::size_t i = 0; i < gens.size(); ++i) x = multiply(x, pow(gens[i], e[i]));
      if (in_subgroup[x]) throw CertificationError("class group decomposition: dependent generators");
      in_subgroup[x] = true;
      member[x] = e;
      ++subgroup_size;
      std::size_t i = 0;
      while (i < e.size() && ++e[i] == orders[i]) e[i++] = 0;
      if (i == e.size()) break;
    }
  }

  // Emit in ascending order n_1 | n_2 | ... | n_d.
  const std::size_t d = gens.size();
  for (std::size_t i = 0; i < d; ++i) factors_.push_back({forms_[gens[d - 1 - i]], orders[d - 1 - i]});
  for (std::size_t i = 0; i + 1 < d; ++i)
    if (factors_[i + 1].order % factors_[i].order != 0)
      throw CertificationError("class group decomposition: invariant factors do not divide");
  coords_.resize(h);
  for (std::size_t x = 0; x < h; ++x) {
    coords_[x].assign(member[x].rbegin(), member[x].rend());
    if (d > 0 && coords_[x].size() != d) throw CertificationError("class group decomposition incomplete");
  }
}

i64 ClassGroup::exponent() const { return factors_.empty() ? 1 : factors_.back().order; }

std::vector<i64> ClassGroup::invariant_factors() const {
  std::vector<i64> out;
  for (const auto& f : factors_) out.push_back(f.order);
  return out;
}

std::size_t ClassGroup::index_of(const QuadForm& reduced) const {
  auto it = std::lower_bound(forms_.begin(), forms_.end(), reduced);
  if (it == forms_.end() || *it != reduced)
    throw CertificationError("form is not a reduced form of this discriminant");
  return static_cast<std::size_t>(it - forms_.begin());
}

std::size_t ClassGroup::pow(std::size_t x, i64 n) const {
  const i64 h = order();
  n = mod(n, h);
  std::size_t result = identity();
  std::size_t base = x;
  while (n > 0) {
    if (n & 1) result = multiply(result, base);
    base = multiply(base, base);
    n >>= 1;
  }
  return result;
}

std::size_t ClassGroup::decode(const std::vector<i64>& exps) const {
  if (exps.size() != factors_.size()) throw PreconditionError("decode: wrong exponent-vector length");
  std::size_t x = identity();
  for (std::size_t i = 0; i < exps.size(); ++i) x = multiply(x, pow(index_of(factors_[i].generator), exps[i]));
  return x;
}

}  // namespace tpl
