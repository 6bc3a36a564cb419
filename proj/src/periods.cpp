#include "tpl/periods.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <set>
#include <thread>

namespace tpl {

ToricPeriod toric_period(const AbelianGroup& G, const std::vector<i64>& fvals, const Character& chi,
                         const FieldEmbedding& emb) {
  const i64 h = G.order();
  if (h % emb.p() == 0) throw PreconditionError("p divides h; the period is not p-integral");
  if (emb.n() != G.exponent()) throw PreconditionError("embedding order must equal the group exponent");
  if (static_cast<i64>(fvals.size()) != h) throw PreconditionError("function table has wrong size");
  const i64 n = G.exponent();
  std::vector<i64> coeffs(static_cast<std::size_t>(n), 0);
  for (std::size_t s = 0; s < fvals.size(); ++s) {
    const i64 e = mod(-character_exponent(G, chi, G.element(s)), n);
    coeffs[static_cast<std::size_t>(e)] = narrow(checked_add(coeffs[static_cast<std::size_t>(e)], fvals[s]));
  }
  ToricPeriod P;
  P.chi = chi;
  P.exact = CycloInt::from_group_ring(n, coeffs);
  P.modp = emb.mul(P.exact.reduce(emb), emb.inv(emb.from_int(h)));
  P.vzero = !emb.is_zero(P.modp);
  return P;
}

PeriodContext make_context(const EllipticCurveData& E, i64 p) {
  return make_context(E, p, right_ideal_classes(maximal_order(build_algebra(E.N))));
}

PeriodContext make_context(const EllipticCurveData& E, i64 p, ShimuraSet X) {
  if (!is_prime(p) || p == 2) throw PreconditionError("p must be an odd prime");
  if (X.order.A.q != E.N) throw PreconditionError("class set level differs from the conductor");
  PeriodContext ctx;
  ctx.curve = E;
  ctx.p = p;
  ctx.X = std::move(X);
  std::map<i64, i64> a;
  for (i64 ell : primes_up_to(13))
    if (ell != E.N) a[ell] = ap(E, ell);
  ctx.f = eigenform(ctx.X, a, p);
  return ctx;
}

GroupView group_view(const ClassGroup& Cl) {
  GroupView V{AbelianGroup(Cl.invariant_factors()), {}};
  for (std::size_t g = 0; g < static_cast<std::size_t>(V.group.order()); ++g)
    V.class_index.push_back(Cl.decode(V.group.element(g)));
  return V;
}

std::vector<i64> pullback(const GroupView& V, const std::vector<std::size_t>& phi, const std::vector<i64>& f) {
  std::vector<i64> out;
  for (std::size_t idx : V.class_index) out.push_back(f.at(phi.at(idx)));
  return out;
}

std::vector<double> target_measure(const std::vector<i64>& weights) {
  double total = 0;
  for (i64 w : weights) total += 1.0 / static_cast<double>(w);
  std::vector<double> mu;
  for (i64 w : weights) mu.push_back(1.0 / static_cast<double>(w) / total);
  return mu;
}

double tv_distance(const std::vector<std::size_t>& points, const std::vector<double>& mu) {
  std::vector<double> emp(mu.size(), 0.0);
  for (auto x : points) emp.at(x) += 1.0 / static_cast<double>(points.size());
  double d = 0;
  for (std::size_t i = 0; i < mu.size(); ++i) d += std::fabs(emp[i] - mu[i]);
  return d / 2;
}

std::vector<std::vector<std::size_t>> subgroups_of_index_at_most(const ClassGroup& Cl, i64 bound) {
  const std::size_t h = static_cast<std::size_t>(Cl.order());
  using Mask = std::vector<char>;
  auto closure = [&](Mask m) {
    for (bool grown = true; grown;) {
      grown = false;
      for (std::size_t x = 0; x < h; ++x) {
        if (!m[x]) continue;
        for (std::size_t y = 0; y < h; ++y) {
          if (!m[y]) continue;
          const std::size_t z = Cl.multiply(x, y);
          if (!m[z]) {
            m[z] = 1;
            grown = true;
          }
        }
      }
    }
    return m;
  };
  std::set<Mask> subs;
  for (std::size_t x = 0; x < h; ++x) {
    Mask m(h, 0);
    m[Cl.identity()] = 1;
    m[x] = 1;
    subs.insert(closure(m));
  }
  for (bool grown = true; grown;) {
    grown = false;
    std::vector<Mask> cur(subs.begin(), subs.end());
    for (std::size_t i = 0; i < cur.size(); ++i)
      for (std::size_t j = i + 1; j < cur.size(); ++j) {
        Mask m(h);
        for (std::size_t k = 0; k < h; ++k) m[k] = static_cast<char>(cur[i][k] | cur[j][k]);
        if (subs.insert(closure(m)).second) grown = true;
      }
  }
  std::vector<std::vector<std::size_t>> out;
  for (const auto& m : subs) {
    const auto size = static_cast<i64>(std::count(m.begin(), m.end(), 1));
    if (static_cast<i64>(h) / size > bound) continue;
    std::vector<std::size_t> elems;
    for (std::size_t k = 0; k < h; ++k)
      if (m[k]) elems.push_back(k);
    out.push_back(elems);
  }
  std::sort(out.begin(), out.end());
  return out;
}

ScanRow nonvanishing_count(const PeriodContext& ctx, const Discriminant& D, const ScanOptions& opt) {
  const ShimuraSet& X = ctx.X;
  const i64 q = X.order.A.q;
  if (kronecker(D.value(), q) != -1) throw PreconditionError("q must be inert in K");
  ClassGroup Cl(D);
  ScanRow row;
  row.D = D.value();
  row.h = Cl.order();
  if (row.h % ctx.p == 0) throw PreconditionError("p divides h = " + std::to_string(row.h));
  row.invariant_factors = Cl.invariant_factors();
  row.log_bound = std::pow(std::log(static_cast<double>(-D.value())), 1.0 - opt.eps);

  const GroupView V = group_view(Cl);
  const AbelianGroup& G = V.group;
  const TorusEmbedding e = optimal_embedding(X, D);
  row.phi = phi_map(Cl, e, X);
  const std::vector<i64> fvals = pullback(V, row.phi, ctx.f.coords);
  for (i64 v : fvals) row.period_trivial += v;

  const FieldEmbedding F(ctx.p, G.exponent());
  const auto chars = character_group(G);
  std::vector<FieldElem> modp;
  std::vector<bool> vzero;
  for (const auto& chi : chars) {
    auto P = toric_period(G, fvals, chi, F);
    modp.push_back(P.modp);
    vzero.push_back(P.vzero);
    if (P.vzero) {
      ++row.ellK;
      row.xi_set.push_back(chi.exponents);
    }
  }

  std::vector<FieldElem> fmod;
  for (i64 v : fvals) fmod.push_back(F.from_int(v));
  row.fourier_ok = fourier(G, fmod, F) == modp && inverse_fourier(G, modp, F) == fmod;

  // f is integer valued, so its mod-p values generate F_p and Frobenius is chi -> chi^p.
  row.q0 = ctx.p;
  row.galois_ok = true;
  for (const auto& orbit : galois_orbits(G, chars, row.q0)) {
    std::size_t in = 0;
    for (const auto& chi : orbit) in += vzero[G.index(chi.exponents)] ? 1 : 0;
    if (in == orbit.size()) ++row.orbit_count;
    if (in != 0 && in != orbit.size()) row.galois_ok = false;
  }

  if (opt.check_alternate) {
    const TorusEmbedding e2 = alternate_embedding(X, D);
    const auto f2 = pullback(V, phi_map(Cl, e2, X), ctx.f.coords);
    row.ellK_alt = 0;
    for (const auto& chi : chars) row.ellK_alt += toric_period(G, f2, chi, F).vzero ? 1 : 0;
  }
  if (opt.check_cocycle && row.h <= opt.cocycle_max_h)
    row.cocycle_failures = static_cast<i64>(cocycle_failures(Cl, e, X, row.phi));

  const auto mu = target_measure(X.weights);
  row.tv = tv_distance(row.phi, mu);
  for (const auto& H : subgroups_of_index_at_most(Cl, opt.subgroup_index_bound)) {
    if (static_cast<i64>(H.size()) == row.h) continue;
    std::vector<std::size_t> pts;
    for (auto s : H) pts.push_back(row.phi[s]);
    row.tv_subgroup = std::max(row.tv_subgroup, tv_distance(pts, mu));
  }
  return row;
}

std::string skip_reason(i64 d, i64 q, i64 p) {
  if (!is_fundamental_discriminant(d)) return "non-fundamental";
  if (d == -3 || d == -4) return "excluded";
  if (d % q == 0) return "ramified";
  if (kronecker(d, q) == 1) return "split";
  if (ClassGroup(Discriminant(d)).order() % p == 0) return "p|h";
  return "";
}

WindowSummary summarize(const std::vector<ScanRow>& rows, i64 lo, i64 hi) {
  WindowSummary w;
  w.lo = lo;
  w.hi = hi;
  bool first = true;
  for (const auto& r : rows) {
    if (-r.D <= lo || -r.D > hi) continue;
    ++w.rows;
    w.min_ellK = first ? r.ellK : std::min(w.min_ellK, r.ellK);
    w.max_ellK = first ? r.ellK : std::max(w.max_ellK, r.ellK);
    first = false;
    w.mean_ellK += static_cast<double>(r.ellK);
    w.mean_log_bound += r.log_bound;
    w.mean_tv += r.tv;
  }
  if (w.rows > 0) {
    w.mean_ellK /= static_cast<double>(w.rows);
    w.mean_log_bound /= static_cast<double>(w.rows);
    w.mean_tv /= static_cast<double>(w.rows);
  }
  return w;
}

ScanReport horizontal_scan(const PeriodContext& ctx, i64 dmin, i64 dmax, const ScanOptions& opt) {
  const i64 q = ctx.X.order.A.q;
  ScanReport report;
  std::vector<i64> todo;
  for (i64 a = dmin + 1; a <= dmax; ++a) {
    const i64 d = -a;
    if (mod(d, 4) != 0 && mod(d, 4) != 1) continue;
    const std::string reason = skip_reason(d, q, ctx.p);
    if (reason.empty())
      todo.push_back(d);
    else
      report.skipped.push_back({d, reason});
  }

  report.rows.resize(todo.size());
  unsigned nthreads = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
  nthreads = std::min<unsigned>(nthreads, static_cast<unsigned>(std::max<std::size_t>(todo.size(), 1)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next++;
      if (i >= todo.size()) return;
      try {
        report.rows[i] = nonvanishing_count(ctx, Discriminant(todo[i]), opt);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);

  for (i64 lo = 2; lo < dmax; lo *= 2) {
    auto w = summarize(report.rows, std::max(lo, dmin), std::min(2 * lo, dmax));
    if (std::max(lo, dmin) < std::min(2 * lo, dmax)) report.windows.push_back(w);
  }
  return report;
}

}  // namespace tpl
