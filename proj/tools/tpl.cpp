#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tpl/bqf.hpp"
#include "tpl/bsd_ledger.hpp"
#include "tpl/cache.hpp"
#include "tpl/characters.hpp"
#include "tpl/periods.hpp"
#include "tpl/shimura.hpp"
#include "tpl/special_points.hpp"

using namespace tpl;

namespace {

// Keys accepted in a config file. Each one mirrors the long flag of the same name.
const std::set<std::string> kConfigKeys = {"q",   "curve",  "p",         "dmin",   "dmax",   "eps",
                                           "pbound", "cache_dir", "format", "tamagawa", "threads", "terms",
                                           "disc", "n",     "group",     "summary"};

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::map<std::string, std::string> out;
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!kConfigKeys.count(key)) throw ConfigError(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    if (value.empty()) throw ConfigError(path + ":" + std::to_string(lineno) + ": empty value for '" + key + "'");
    if (out.count(key)) throw ConfigError(path + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
    out[key] = value;
  }
  return out;
}

i64 parse_int(const std::string& key, const std::string& s) {
  try {
    std::size_t used = 0;
    const i64 v = std::stoll(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError("bad integer for " + key + ": '" + s + "'");
}

double parse_double(const std::string& key, const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size() && std::isfinite(v)) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError("bad number for " + key + ": '" + s + "'");
}

std::vector<i64> parse_int_list(const std::string& key, const std::string& s) {
  std::vector<i64> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_int(key, trim(item)));
  if (out.empty()) throw ConfigError("empty list for " + key);
  return out;
}

// "11=5,13=2" -> {11: 5, 13: 2}
std::map<i64, i64> parse_tamagawa(const std::string& s) {
  std::map<i64, i64> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ConfigError("tamagawa entries look like l=c, got '" + item + "'");
    out[parse_int("tamagawa", trim(item.substr(0, eq)))] = parse_int("tamagawa", trim(item.substr(eq + 1)));
  }
  return out;
}

// Raw string settings: config file first, then overridden by flags.
struct Settings {
  std::map<std::string, std::string> values;

  bool has(const std::string& k) const { return values.count(k) != 0; }
  const std::string& str(const std::string& k) const {
    const auto it = values.find(k);
    if (it == values.end()) throw ConfigError("missing required setting '" + k + "' (flag --" + k + " or config key)");
    return it->second;
  }
  i64 integer(const std::string& k) const { return parse_int(k, str(k)); }
  i64 integer(const std::string& k, i64 def) const { return has(k) ? integer(k) : def; }
  double real(const std::string& k, double def) const { return has(k) ? parse_double(k, str(k)) : def; }

  EllipticCurveData curve() const {
    return parse_curve(str("curve"), has("tamagawa") ? parse_tamagawa(str("tamagawa")) : std::map<i64, i64>{});
  }
  i64 level() const {
    if (has("curve")) {
      const i64 N = curve().N;
      if (has("q") && integer("q") != N) throw ConfigError("q does not match the conductor of the curve");
      return N;
    }
    return integer("q");
  }
};

json form_json(const QuadForm& f) { return json::array({f.a, f.b, f.c}); }

json quat_json(const Quat& x) {
  json out = json::array();
  for (const auto& c : x.x) out.push_back(rational_to_json(c));
  return out;
}

json embedding_json(const TorusEmbedding& e) {
  return {{"omega", quat_json(e.omega)}, {"base", e.base}, {"coords", e.coords}, {"trace", e.t}, {"norm", e.n}};
}

json row_json(const ScanRow& r) {
  json xi = json::array();
  for (const auto& x : r.xi_set) xi.push_back(x);
  return {{"D", r.D},
          {"h", r.h},
          {"q0", r.q0},
          {"ellK", r.ellK},
          {"orbit_count", r.orbit_count},
          {"xi_set", xi},
          {"log_bound", r.log_bound},
          {"invariant_factors", r.invariant_factors},
          {"phi", r.phi},
          {"period_trivial", r.period_trivial},
          {"fourier_ok", r.fourier_ok},
          {"galois_ok", r.galois_ok},
          {"ellK_alt", r.ellK_alt},
          {"cocycle_failures", r.cocycle_failures},
          {"tv", r.tv},
          {"tv_subgroup", r.tv_subgroup}};
}

json window_json(const WindowSummary& w) {
  return {{"lo", w.lo},           {"hi", w.hi},           {"rows", w.rows},
          {"min_ellK", w.min_ellK}, {"max_ellK", w.max_ellK}, {"mean_ellK", w.mean_ellK},
          {"mean_log_bound", w.mean_log_bound}, {"mean_tv", w.mean_tv}};
}

std::string fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

i64 valuation(i64 n, i64 p) {
  i64 v = 0;
  while (n != 0 && n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

// ---- subcommands ----

void cmd_classgroup(const Settings& s) {
  const Discriminant D(s.integer("disc"));
  const ClassGroup Cl(D);
  json factors = json::array();
  for (const auto& f : Cl.factors()) factors.push_back({{"form", form_json(f.generator)}, {"order", f.order}});
  json forms = json::array();
  for (const auto& f : Cl.elements()) forms.push_back(form_json(f));
  emit({{"D", D.value()},
        {"h", Cl.order()},
        {"factors", factors},
        {"invariant_factors", Cl.invariant_factors()},
        {"forms", forms}});
}

void cmd_shimura_set(const Settings& s, const Cache& cache) {
  const ShimuraSet X = cache.shimura_set(s.level());
  json j = shimura_to_json(X);
  j["H"] = X.size();
  j["mass"] = rational_to_json(X.mass());
  j["tau"] = tau_action(X);
  emit(j);
}

void cmd_brandt(const Settings& s, const Cache& cache) {
  const ShimuraSet X = cache.shimura_set(s.level());
  const i64 n = s.integer("n");
  if (n < 1) throw ConfigError("n must be positive");
  const BrandtMatrix B = cache.brandt(X, n);
  json j = brandt_to_json(X, B);
  j["weights"] = X.weights;
  j["excluded_from_invariants"] = n % X.order.A.q == 0;
  emit(j);
}

PeriodContext context(const Settings& s, const Cache& cache) {
  const EllipticCurveData E = s.curve();
  return make_context(E, s.integer("p"), cache.shimura_set(s.level()));
}

void cmd_eigenform(const Settings& s, const Cache& cache) {
  const PeriodContext ctx = context(s, cache);
  json ev = json::object();
  for (const auto& [ell, a] : ctx.f.eigenvalues) ev[std::to_string(ell)] = a;
  Rational cusp;
  for (std::size_t i = 0; i < ctx.X.size(); ++i) cusp = cusp + Rational(ctx.f.coords[i], ctx.X.weights[i]);
  std::set<i64> residues;
  for (i64 v : ctx.f.coords) residues.insert(mod(v, ctx.p));
  emit({{"q", ctx.X.order.A.q},
        {"p", ctx.p},
        {"coords", ctx.f.coords},
        {"eigenvalues", ev},
        {"weights", ctx.X.weights},
        {"cuspidal", cusp.is_zero()},
        {"nonconstant_mod_p", residues.size() > 1}});
}

void cmd_special_points(const Settings& s, const Cache& cache) {
  const ShimuraSet X = cache.shimura_set(s.level());
  const Discriminant D(s.integer("disc"));
  const ClassGroup Cl(D);
  const TorusEmbedding e = optimal_embedding(X, D);
  json forms = json::array();
  for (const auto& f : Cl.elements()) forms.push_back(form_json(f));
  emit({{"q", X.order.A.q}, {"D", D.value()}, {"embedding", embedding_json(e)}, {"forms", forms}, {"map", phi_map(Cl, e, X)}});
}

void cmd_periods(const Settings& s, const Cache& cache) {
  const PeriodContext ctx = context(s, cache);
  ScanOptions opt;
  opt.eps = s.real("eps", opt.eps);
  const ScanRow r = nonvanishing_count(ctx, Discriminant(s.integer("disc")), opt);
  json j = row_json(r);
  j["p"] = ctx.p;
  j["q"] = ctx.X.order.A.q;
  emit(j);
}

void cmd_scan(const Settings& s, const Cache& cache) {
  const PeriodContext ctx = context(s, cache);
  ScanOptions opt;
  opt.eps = s.real("eps", opt.eps);
  opt.threads = static_cast<unsigned>(s.integer("threads", 0));
  const i64 dmin = s.integer("dmin", 4);
  const i64 dmax = s.integer("dmax");
  if (dmin < 0 || dmax < dmin) throw ConfigError("need 0 <= dmin <= dmax");
  const std::string format = s.has("format") ? s.str("format") : "csv";
  if (format != "csv" && format != "json") throw ConfigError("format must be csv or json");
  const ScanReport rep = horizontal_scan(ctx, dmin, dmax, opt);

  json windows = json::array();
  for (const auto& w : rep.windows) windows.push_back(window_json(w));
  std::map<std::string, i64> skipped;
  for (const auto& k : rep.skipped) ++skipped[k.reason];
  i64 nonzero = 0, trivial_nonzero = 0, fourier_bad = 0, galois_bad = 0, alt_bad = 0, cocycle_bad = 0;
  for (const auto& r : rep.rows) {
    nonzero += r.ellK > 0 ? 1 : 0;
    trivial_nonzero += mod(r.period_trivial, ctx.p) != 0 ? 1 : 0;
    fourier_bad += r.fourier_ok ? 0 : 1;
    galois_bad += r.galois_ok ? 0 : 1;
    alt_bad += r.ellK_alt >= 0 && r.ellK_alt != r.ellK ? 1 : 0;
    cocycle_bad += r.cocycle_failures > 0 ? 1 : 0;
  }
  json summary = {{"q", ctx.X.order.A.q},
                  {"p", ctx.p},
                  {"dmin", dmin},
                  {"dmax", dmax},
                  {"eps", opt.eps},
                  {"eigenform", ctx.f.coords},
                  {"rows", rep.rows.size()},
                  {"rows_with_nonvanishing_character", nonzero},
                  {"rows_with_nonvanishing_trivial_character", trivial_nonzero},
                  {"skipped", skipped},
                  {"fourier_failures", fourier_bad},
                  {"galois_failures", galois_bad},
                  {"alternate_embedding_mismatches", alt_bad},
                  {"cocycle_failures", cocycle_bad},
                  {"windows", windows}};

  if (format == "json") {
    json rows = json::array();
    for (const auto& r : rep.rows) rows.push_back(row_json(r));
    summary["row_data"] = rows;
    emit(summary);
    return;
  }

  // One line per discriminant in |D| order; skipped ones carry their reason.
  std::map<i64, std::string> lines;
  for (const auto& r : rep.rows)
    lines[-r.D] = std::to_string(r.D) + "," + std::to_string(r.h) + "," + std::to_string(r.ellK) + "," +
                  std::to_string(r.orbit_count) + "," + fixed(r.log_bound) + ",";
  for (const auto& k : rep.skipped) lines[-k.D] = std::to_string(k.D) + ",,,,," + k.reason;
  std::cout << "D,h,ellK,orbits,log_bound,reason\n";
  for (const auto& [a, line] : lines) std::cout << line << "\n";

  if (s.has("summary")) {
    std::ofstream out(s.str("summary"));
    if (!out) throw ConfigError("cannot write summary file " + s.str("summary"));
    out << summary.dump(2) << "\n";
  } else {
    std::cerr << summary.dump(2) << "\n";
  }
}

void cmd_equidist(const Settings& s, const Cache& cache) {
  const ShimuraSet X = cache.shimura_set(s.level());
  const i64 q = X.order.A.q;
  const i64 dmin = s.integer("dmin", 4);
  const i64 dmax = s.integer("dmax");
  if (dmin < 0 || dmax < dmin) throw ConfigError("need 0 <= dmin <= dmax");
  const auto mu = target_measure(X.weights);
  std::vector<ScanRow> rows;
  json out_rows = json::array();
  for (i64 a = dmin + 1; a <= dmax; ++a) {
    const i64 d = -a;
    if (!is_fundamental_discriminant(d) || d == -3 || d == -4 || d % q == 0 || kronecker(d, q) != -1) continue;
    const Discriminant D(d);
    const ClassGroup Cl(D);
    const auto phi = phi_map(Cl, optimal_embedding(X, D), X);
    ScanRow r;
    r.D = d;
    r.h = Cl.order();
    r.tv = tv_distance(phi, mu);
    for (const auto& H : subgroups_of_index_at_most(Cl, 2)) {
      if (static_cast<i64>(H.size()) == r.h) continue;
      std::vector<std::size_t> pts;
      for (auto x : H) pts.push_back(phi[x]);
      r.tv_subgroup = std::max(r.tv_subgroup, tv_distance(pts, mu));
    }
    out_rows.push_back({{"D", r.D}, {"h", r.h}, {"tv", r.tv}, {"tv_subgroup", r.tv_subgroup}});
    rows.push_back(r);
  }
  json windows = json::array();
  std::vector<double> means;
  for (i64 lo = 2; lo < dmax; lo *= 2) {
    const i64 a = std::max(lo, dmin), b = std::min(2 * lo, dmax);
    if (a >= b) continue;
    const auto w = summarize(rows, a, b);
    if (w.rows > 0) means.push_back(w.mean_tv);
    windows.push_back({{"lo", w.lo}, {"hi", w.hi}, {"rows", w.rows}, {"mean_tv", w.mean_tv}});
  }
  std::string trend = "insufficient data";
  if (means.size() >= 2) trend = means.back() < means.front() ? "decreasing" : "not decreasing";
  emit({{"q", q}, {"target", mu}, {"rows", out_rows}, {"windows", windows}, {"trend", trend}});
}

void cmd_stability(const Settings& s) {
  const std::vector<i64> factors = parse_int_list("group", s.str("group"));
  const i64 q = s.integer("q");
  const AbelianGroup G(factors);
  std::vector<i64> desc = factors;
  std::sort(desc.rbegin(), desc.rend());
  const StabilityBound b = stability_bound(desc, q);
  const StableGeneratingSet m = min_stable_generating_size(G, q);
  json witness = json::array();
  for (const auto& chi : m.witness) witness.push_back(chi.exponents);
  emit({{"group", factors},
        {"q", q},
        {"bound", b.exact},
        {"weaker_bound", rational_to_json(b.weaker)},
        {"min_stable_size", m.size},
        {"witness_set", witness},
        {"bound_holds", m.size >= b.exact}});
}

void cmd_ledger(const Settings& s, const Cache& cache) {
  const EllipticCurveData E = s.curve();
  const i64 bound = s.integer("pbound", 100);
  const auto excluded = excluded_primes(E);
  const IdealGcd I = ideal_I_gcd(E, bound);
  json j = {{"curve", {E.a1, E.a2, E.a3, E.a4, E.a6}},
            {"N", E.N},
            {"prime_bound", bound},
            {"excluded_primes", excluded},
            {"ideal_I_gcd", I.gcd},
            {"ideal_I_stable_from", I.stable_from}};
  if (s.has("p")) {
    const i64 p = s.integer("p");
    if (excluded.count(p)) throw PreconditionError("p = " + std::to_string(p) + " is an excluded prime");
    i64 h = 1;
    std::optional<i64> ordP = 0;
    if (s.has("disc")) {
      const PeriodContext ctx = context(s, cache);
      const ScanRow r = nonvanishing_count(ctx, Discriminant(s.integer("disc")));
      h = r.h;
      if (r.period_trivial == 0)
        ordP.reset();
      else
        ordP = valuation(r.period_trivial, p);
      j["D"] = r.D;
      j["h"] = h;
      j["period_trivial"] = r.period_trivial;
    }
    j["p"] = p;
    j["kolyvagin_exponent"] = kolyvagin_exponent({0, 0, 0, 0, 0, 0}, I.gcd, h, p);
    j["sha_exponent"] = ordP ? json(sha_exponent(*ordP, {})) : json(nullptr);
  }
  emit(j);
}

void cmd_lvalue(const Settings& s) {
  const EllipticCurveData E = s.curve();
  const i64 D = s.integer("disc", 1);
  const i64 terms = s.integer("terms", 2000);
  if (terms < 1) throw ConfigError("terms must be positive");
  const LValue L = central_lvalue(E, D, terms);
  const LValue L2 = central_lvalue(E, D, 2 * terms);
  emit({{"curve", {E.a1, E.a2, E.a3, E.a4, E.a6}},
        {"D", D},
        {"terms", L.terms},
        {"value", L.value},
        {"tail_bound", L.tail_bound},
        {"rounding_bound", L.rounding_bound},
        {"root_number", L.root_number},
        {"doubled_terms_change", std::fabs(L2.value - L.value)}});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Toric periods, special points and Brandt matrices for definite quaternion algebras of prime level"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for all subcommands");

  std::string config_path, cache_flag;
  std::map<std::string, std::string> flags;
  app.add_option("--config", config_path, "Config file of key = value lines");
  app.add_option("--cache", cache_flag, "Cache directory (overrides TPL_CACHE and cache_dir)");

  auto opt = [&](CLI::App* sub, const std::string& key, const std::string& help) {
    sub->add_option_function<std::string>("--" + key, [&flags, key](const std::string& v) { flags[key] = v; }, help);
  };
  // D values are negative, so let option values start with '-'.
  app.allow_extras(false);

  auto* classgroup = app.add_subcommand("classgroup", "Class group of a negative discriminant");
  opt(classgroup, "disc", "Discriminant D < 0");

  auto* shimura = app.add_subcommand("shimura-set", "Right ideal classes of the maximal order");
  opt(shimura, "q", "Prime level");

  auto* brandt = app.add_subcommand("brandt", "Brandt matrix B(n)");
  opt(brandt, "q", "Prime level");
  opt(brandt, "n", "Index n");

  auto* eigen = app.add_subcommand("eigenform", "Eigenform attached to a curve of prime conductor");
  opt(eigen, "curve", "Weierstrass coefficients a1,a2,a3,a4,a6");
  opt(eigen, "q", "Prime level (checked against the conductor)");
  opt(eigen, "p", "Odd prime");

  auto* special = app.add_subcommand("special-points", "Optimal embedding and the map from Cl_K");
  opt(special, "q", "Prime level");
  opt(special, "disc", "Discriminant D < 0 with q inert");

  auto* periods = app.add_subcommand("periods", "Toric periods for every character of one Cl_K");
  for (const char* k : {"curve", "q", "p", "disc", "eps"}) opt(periods, k, std::string("Setting ") + k);

  auto* scan = app.add_subcommand("scan", "Horizontal scan over discriminants");
  for (const char* k : {"curve", "q", "p", "dmin", "dmax", "eps", "threads", "format", "summary"})
    opt(scan, k, std::string("Setting ") + k);

  auto* equidist = app.add_subcommand("equidist", "Total-variation distance of special points");
  for (const char* k : {"q", "curve", "dmin", "dmax"}) opt(equidist, k, std::string("Setting ") + k);

  auto* stability = app.add_subcommand("stability", "Galois-stable generating sets of the dual group");
  opt(stability, "group", "Cyclic factor orders, e.g. 3,5");
  opt(stability, "q", "Prime power");

  auto* ledger = app.add_subcommand("ledger", "Excluded primes and exponent bookkeeping");
  for (const char* k : {"curve", "tamagawa", "pbound", "p", "disc"}) opt(ledger, k, std::string("Setting ") + k);

  auto* lvalue = app.add_subcommand("lvalue", "Central value of a quadratic twist");
  opt(lvalue, "curve", "Weierstrass coefficients a1,a2,a3,a4,a6");
  lvalue->add_option_function<std::string>("--twist", [&flags](const std::string& v) { flags["disc"] = v; },
                                           "Fundamental discriminant (1 for the curve itself)");
  opt(lvalue, "terms", "Number of terms");

  for (auto* sub : app.get_subcommands({})) sub->allow_extras(false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 1;
  }

  try {
    Settings s;
    if (!config_path.empty()) s.values = read_config(config_path);
    for (const auto& [k, v] : flags) s.values[k] = v;
    const Cache cache(resolve_cache_dir(cache_flag, s.has("cache_dir") ? s.str("cache_dir") : ""));

    if (classgroup->parsed()) cmd_classgroup(s);
    else if (shimura->parsed()) cmd_shimura_set(s, cache);
    else if (brandt->parsed()) cmd_brandt(s, cache);
    else if (eigen->parsed()) cmd_eigenform(s, cache);
    else if (special->parsed()) cmd_special_points(s, cache);
    else if (periods->parsed()) cmd_periods(s, cache);
    else if (scan->parsed()) cmd_scan(s, cache);
    else if (equidist->parsed()) cmd_equidist(s, cache);
    else if (stability->parsed()) cmd_stability(s);
    else if (ledger->parsed()) cmd_ledger(s, cache);
    else if (lvalue->parsed()) cmd_lvalue(s);
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition violated: " << e.what() << "\n";
    return 2;
  } catch (const CertificationError& e) {
    std::cerr << "certification failed: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
