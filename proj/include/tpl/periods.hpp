#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "tpl/bqf.hpp"
#include "tpl/bsd_ledger.hpp"
#include "tpl/characters.hpp"
#include "tpl/shimura.hpp"
#include "tpl/special_points.hpp"

namespace tpl {

struct ToricPeriod {
  Character chi;
  CycloInt exact{1};  // h P_f(chi) in Z[zeta_n]
  FieldElem modp;     // P_f(chi) in F_{p^k}
  bool vzero = false;
};

/// h P = sum_sigma chi(sigma)^-1 f(sigma), with f given on the elements of G
/// (AbelianGroup order). Throws PreconditionError if p | |G|.
ToricPeriod toric_period(const AbelianGroup& G, const std::vector<i64>& fvals, const Character& chi,
                         const FieldEmbedding& emb);

/// The curve, its class set and eigenform, shared by all rows of a scan.
struct PeriodContext {
  EllipticCurveData curve;
  ShimuraSet X;
  Eigenform f;
  i64 p = 0;
};

/// Builds X for q = N and the eigenform with a_l for l <= 13, l != q.
PeriodContext make_context(const EllipticCurveData& E, i64 p);
/// Same, reusing an already built class set for q = N.
PeriodContext make_context(const EllipticCurveData& E, i64 p, ShimuraSet X);

/// Cl_K as an AbelianGroup plus, for each AbelianGroup element, its ClassGroup index.
struct GroupView {
  AbelianGroup group;
  std::vector<std::size_t> class_index;
};
GroupView group_view(const ClassGroup& Cl);

/// f(x_sigma) in AbelianGroup order.
std::vector<i64> pullback(const GroupView& V, const std::vector<std::size_t>& phi, const std::vector<i64>& f);

struct ScanOptions {
  double eps = 0.1;
  bool check_cocycle = true;  // only for h <= cocycle_max_h
  i64 cocycle_max_h = 50;
  bool check_alternate = true;
  i64 subgroup_index_bound = 2;
  unsigned threads = 0;  // 0: hardware concurrency
};

struct ScanRow {
  i64 D = 0;
  i64 h = 0;
  i64 q0 = 0;
  i64 ellK = 0;
  i64 orbit_count = 0;
  std::vector<std::vector<i64>> xi_set;  // exponent vectors of the characters in Xi_K
  double log_bound = 0;
  // diagnostics
  std::vector<i64> invariant_factors;
  std::vector<std::size_t> phi;  // ClassGroup order
  i64 period_trivial = 0;        // h P_f(1) = sum_sigma f(x_sigma)
  bool fourier_ok = false;
  bool galois_ok = false;
  i64 ellK_alt = -1;             // -1: not computed
  i64 cocycle_failures = -1;     // -1: not computed
  double tv = 0;
  double tv_subgroup = 0;        // max over subgroups of index <= bound (excluding G itself)
};

/// Full computation for one discriminant (q inert, p not dividing h).
ScanRow nonvanishing_count(const PeriodContext& ctx, const Discriminant& D, const ScanOptions& opt = {});

struct SkippedD {
  i64 D = 0;
  std::string reason;  // split, ramified, p|h, non-fundamental, excluded
};

struct WindowSummary {
  i64 lo = 0, hi = 0;  // |D| in (lo, hi]
  i64 rows = 0;
  i64 min_ellK = 0, max_ellK = 0;
  double mean_ellK = 0;
  double mean_log_bound = 0;
  double mean_tv = 0;
};

struct ScanReport {
  std::vector<ScanRow> rows;
  std::vector<SkippedD> skipped;
  std::vector<WindowSummary> windows;  // dyadic
};

/// Reason a discriminant-shaped d (d = 0, 1 mod 4) is skipped, or "" if it is scanned.
std::string skip_reason(i64 d, i64 q, i64 p);

/// Rows for every -dmax <= D < -dmin passing the filters, sorted by |D|.
ScanReport horizontal_scan(const PeriodContext& ctx, i64 dmin, i64 dmax, const ScanOptions& opt = {});

/// Summary over |D| in (lo, hi].
WindowSummary summarize(const std::vector<ScanRow>& rows, i64 lo, i64 hi);

/// Probability measure proportional to 1/w_x.
std::vector<double> target_measure(const std::vector<i64>& weights);
/// Total-variation distance between the empirical distribution of points and mu.
double tv_distance(const std::vector<std::size_t>& points, const std::vector<double>& mu);
/// All subgroups of G (as sorted element-index lists) of index <= bound.
std::vector<std::vector<std::size_t>> subgroups_of_index_at_most(const ClassGroup& Cl, i64 bound);

}  // namespace tpl
