#include "tpl/characters.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <set>
#include <string>

namespace tpl {

AbelianGroup::AbelianGroup(std::vector<i64> factors) : factors_(std::move(factors)) {
  for (i64 n : factors_) {
    if (n < 1) throw PreconditionError("cyclic factor orders must be positive");
    order_ = narrow(checked_mul(order_, n));
    exponent_ = lcm(exponent_, n);
  }
}

std::vector<i64> AbelianGroup::element(std::size_t index) const {
  std::vector<i64> coords(factors_.size());
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    coords[i] = static_cast<i64>(index % static_cast<std::size_t>(factors_[i]));
    index /= static_cast<std::size_t>(factors_[i]);
  }
  return coords;
}

std::size_t AbelianGroup::index(const std::vector<i64>& coords) const {
  std::size_t idx = 0;
  for (std::size_t i = factors_.size(); i-- > 0;)
    idx = idx * static_cast<std::size_t>(factors_[i]) + static_cast<std::size_t>(mod(coords[i], factors_[i]));
  return idx;
}

std::vector<std::vector<i64>> AbelianGroup::elements() const {
  std::vector<std::vector<i64>> out;
  out.reserve(static_cast<std::size_t>(order_));
  for (std::size_t i = 0; i < static_cast<std::size_t>(order_); ++i) out.push_back(element(i));
  return out;
}

i64 AbelianGroup::element_order(const std::vector<i64>& coords) const {
  i64 o = 1;
  for (std::size_t i = 0; i < factors_.size(); ++i) o = lcm(o, factors_[i] / gcd(mod(coords[i], factors_[i]), factors_[i]));
  return o;
}

std::vector<Character> character_group(const AbelianGroup& G) {
  std::vector<Character> out;
  for (auto& e : G.elements()) out.push_back(Character{std::move(e)});
  return out;
}

i64 character_exponent(const AbelianGroup& G, const Character& chi, const std::vector<i64>& sigma) {
  const i64 n = G.exponent();
  i128 acc = 0;
  for (std::size_t i = 0; i < G.factors().size(); ++i)
    acc += static_cast<i128>(chi.exponents[i]) * sigma[i] * (n / G.factors()[i]);
  return static_cast<i64>(((acc % n) + n) % n);
}

i64 character_order(const AbelianGroup& G, const Character& chi) { return G.element_order(chi.exponents); }

Character character_power(const AbelianGroup& G, const Character& chi, i64 k) {
  Character r = chi;
  for (std::size_t i = 0; i < r.exponents.size(); ++i)
    r.exponents[i] = narrow(mod(static_cast<i64>(static_cast<i128>(r.exponents[i]) * mod(k, G.factors()[i]) % G.factors()[i]), G.factors()[i]));
  return r;
}

std::pair<CycloInt, FieldElem> eval_char(const AbelianGroup& G, const Character& chi,
                                         const std::vector<i64>& sigma, const FieldEmbedding& emb) {
  if (emb.n() != G.exponent()) throw PreconditionError("embedding order must equal the group exponent");
  const i64 e = character_exponent(G, chi, sigma);
  return {CycloInt::monomial(G.exponent(), e), emb.zeta_pow(e)};
}

std::vector<FieldElem> fourier(const AbelianGroup& G, const std::vector<FieldElem>& fvals,
                               const FieldEmbedding& emb) {
  if (G.order() % emb.p() == 0)
    throw PreconditionError("p divides the group order; Fourier inversion unavailable");
  if (emb.n() != G.exponent()) throw PreconditionError("embedding order must equal the group exponent");
  if (static_cast<i64>(fvals.size()) != G.order()) throw PreconditionError("function table has wrong size");
  const FieldElem h_inv = emb.inv(emb.from_int(G.order()));
  const auto elems = G.elements();
  std::vector<FieldElem> out;
  for (const auto& chi : character_group(G)) {
    FieldElem acc = emb.zero();
    for (std::size_t s = 0; s < elems.size(); ++s)
      acc = emb.add(acc, emb.mul(emb.zeta_pow(-character_exponent(G, chi, elems[s])), fvals[s]));
    out.push_back(emb.mul(acc, h_inv));
  }
  return out;
}

std::vector<FieldElem> inverse_fourier(const AbelianGroup& G, const std::vector<FieldElem>& coeffs,
                                       const FieldEmbedding& emb) {
  if (emb.n() != G.exponent()) throw PreconditionError("embedding order must equal the group exponent");
  const auto elems = G.elements();
  const auto chars = character_group(G);
  std::vector<FieldElem> out;
  for (const auto& sigma : elems) {
    FieldElem acc = emb.zero();
    for (std::size_t c = 0; c < chars.size(); ++c)
      acc = emb.add(acc, emb.mul(coeffs[c], emb.zeta_pow(character_exponent(G, chars[c], sigma))));
    out.push_back(acc);
  }
  return out;
}

std::vector<std::vector<Character>> galois_orbits(const AbelianGroup& G, const std::vector<Character>& chars,
                                                  i64 q0) {
  std::set<Character> remaining(chars.begin(), chars.end());
  std::vector<std::vector<Character>> orbits;
  while (!remaining.empty()) {
    Character start = *remaining.begin();
    if (gcd(q0, character_order(G, start)) != 1)
      throw PreconditionError("Frobenius exponent q0 is not coprime to a character order");
    std::vector<Character> orbit;
    Character cur = start;
    do {
      orbit.push_back(cur);
      remaining.erase(cur);
      cur = character_power(G, cur, q0);
    } while (cur != start);
    std::sort(orbit.begin(), orbit.end());
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

StabilityBound stability_bound(const std::vector<i64>& divisors, i64 q) {
  StabilityBound b;
  for (i64 n : divisors) {
    if (n <= 0) throw PreconditionError("stability_bound: factor orders must be positive");
    if (gcd(q, n) != 1) throw PreconditionError("stability_bound: q is not coprime to " + std::to_string(n));
    if (n == 1) continue;
    b.exact += multiplicative_order(q, n);
    b.weaker += Rational(euler_phi(n), gcd(n, q - 1));
  }
  return b;
}

StableGeneratingSet min_stable_generating_size(const AbelianGroup& G, i64 q, i64 max_order) {
  if (G.order() > max_order || G.order() > 64)
    throw PreconditionError("group too large for exhaustive stable-subset search");
  if (gcd(q, G.order()) != 1) throw PreconditionError("q must be coprime to |G|");
  using Mask = u64;
  const std::size_t h = static_cast<std::size_t>(G.order());
  const auto elems = G.elements();
  std::vector<std::size_t> add(h * h);
  for (std::size_t x = 0; x < h; ++x)
    for (std::size_t y = 0; y < h; ++y) {
      std::vector<i64> s(elems[x].size());
      for (std::size_t i = 0; i < s.size(); ++i) s[i] = elems[x][i] + elems[y][i];
      add[x * h + y] = G.index(s);
    }

  const auto chars = character_group(G);
  const auto orbits = galois_orbits(G, chars, q);
  std::vector<Mask> orbit_masks;
  for (const auto& orb : orbits) {
    Mask m = 0;
    for (const auto& c : orb) m |= Mask{1} << G.index(c.exponents);
    orbit_masks.push_back(m);
  }

  auto close = [&](Mask sub, Mask extra) {
    for (std::size_t g = 0; g < h; ++g) {
      if (!((extra >> g) & 1) || ((sub >> g) & 1)) continue;
      // sub <- sub + <g>
      Mask grown = sub;
      Mask frontier = sub;
      for (;;) {
        Mask next = 0;
        for (std::size_t x = 0; x < h; ++x)
          if ((frontier >> x) & 1) next |= Mask{1} << add[x * h + g];
        next &= ~grown;
        if (next == 0) break;
        grown |= next;
        frontier = next;
      }
      sub = grown;
    }
    return sub;
  };

  const Mask start = Mask{1} << G.index(std::vector<i64>(G.factors().size(), 0));
  const Mask full = h == 64 ? ~Mask{0} : ((Mask{1} << h) - 1);
  std::map<Mask, i64> dist{{start, 0}};
  std::map<Mask, std::pair<Mask, std::size_t>> parent;
  using Item = std::pair<i64, Mask>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  pq.push({0, start});
  while (!pq.empty()) {
    auto [d, sub] = pq.top();
    pq.pop();
    if (d != dist[sub]) continue;
    if (sub == full) break;
    for (std::size_t o = 0; o < orbit_masks.size(); ++o) {
      if ((orbit_masks[o] & ~sub) == 0) continue;
      Mask next = close(sub, orbit_masks[o]);
      i64 nd = d + static_cast<i64>(orbits[o].size());
      auto it = dist.find(next);
      if (it == dist.end() || nd < it->second) {
        dist[next] = nd;
        parent[next] = {sub, o};
        pq.push({nd, next});
      }
    }
  }
  StableGeneratingSet result;
  result.size = dist.at(full);
  for (Mask cur = full; cur != start;) {
    auto [prev, o] = parent.at(cur);
    result.witness.insert(result.witness.end(), orbits[o].begin(), orbits[o].end());
    cur = prev;
  }
  std::sort(result.witness.begin(), result.witness.end());
  return result;
}

std::vector<std::vector<i64>> abelian_groups_of_order(i64 n) {
  std::vector<std::vector<i64>> out;
  std::vector<i64> cur;
  std::function<void(i64, i64)> rec = [&](i64 remaining, i64 prev) {
    if (remaining == 1) {
      out.push_back(cur);
      return;
    }
    for (i64 m = prev; m <= remaining; m += prev) {
      if (m < 2 || remaining % m != 0) continue;
      cur.push_back(m);
      rec(remaining / m, m);
      cur.pop_back();
    }
  };
  rec(n, 1);
  return out;
}

}  // namespace tpl
