#include "sheafbetti/checks.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <iomanip>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "sheafbetti/blowup.hpp"
#include "sheafbetti/invariants.hpp"
#include "sheafbetti/modular.hpp"
#include "sheafbetti/oracles.hpp"
#include "sheafbetti/wallcross.hpp"

namespace sheafbetti {

namespace {

struct ReferenceRow {
  long c2;
  std::vector<long> half;
  long chi;
};

// Betti numbers b_0, b_2, ..., b_dim and chi of M(3, -H, c2) on P^2.
const std::vector<ReferenceRow>& reference_table() {
  static const std::vector<ReferenceRow> rows = {
      {2, {1, 1}, 3},
      {3, {1, 2, 5, 8, 10}, 42},
      {4, {1, 2, 6, 12, 24, 38, 54, 59}, 333},
      {5, {1, 2, 6, 13, 28, 52, 94, 149, 217, 273, 298}, 1968},
      {6, {1, 2, 6, 13, 29, 56, 108, 189, 322, 505, 744, 992, 1200, 1275}, 9609},
  };
  return rows;
}

// Euler numbers of h_{3,-C-f} at J_{1,0}, indexed by k in q^{-5/6+k}.
const std::map<long, long>& reference_rank3() {
  static const std::map<long, long> v = {{0, 0}, {1, 0}, {2, 3}, {3, 69}, {4, 792}, {5, 6345}};
  return v;
}

QExponent at(const Rational& base, long steps) { return QExponent::from_rational(base + Rational(steps)); }

class Context {
 public:
  Context(std::optional<long> order, unsigned seed) : order_(order), rng_(seed) {}

  long depth(long full) {
    if (order_ && *order_ < full) {
      reduced_ = true;
      return std::max(*order_, 0L);
    }
    return full;
  }
  bool reduced() const { return reduced_; }
  void reset() { reduced_ = false; }
  std::mt19937& rng() { return rng_; }

  // J_{1,0} rank-3 series, computed once per cutoff.
  const RationalSeries& h3_unrefined(long steps) { return cached(h3u_, steps, unrefined_); }
  const WSeries& h3_refined(long steps) { return cached(h3r_, steps, refined_); }

  WallCrossing<Rational> unrefined_;
  WallCrossing<WRational> refined_;

 private:
  template <class R>
  const PuiseuxSeries<R>& cached(std::map<long, PuiseuxSeries<R>>& store, long steps, const WallCrossing<R>& wc) {
    auto it = store.find(steps);
    if (it == store.end()) it = store.emplace(steps, wc.h3(Polarization(1, 0), at(Rational(-5, 6), steps))).first;
    return it->second;
  }

  std::optional<long> order_;
  bool reduced_ = false;
  std::mt19937 rng_;
  std::map<long, RationalSeries> h3u_;
  std::map<long, WSeries> h3r_;
};

// Collects failures; the check passes when none were recorded.
struct Report {
  std::vector<std::string> failures;
  std::vector<std::string> info;
  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  std::string detail() const {
    std::string out;
    const auto& list = failures.empty() ? info : failures;
    for (std::size_t i = 0; i < list.size() && i < 4; ++i) {
      if (i) out += "; ";
      out += list[i];
    }
    if (list.size() > 4) out += "; (+" + std::to_string(list.size() - 4) + " more)";
    return out;
  }
};

template <class R>
InvariantSeries wrap(int r, const DivisorClass& c1, const PuiseuxSeries<R>& s) {
  InvariantSeries out;
  out.rank = r;
  out.c1 = c1;
  out.surface = c1.surface;
  if (c1.surface == SurfaceKind::Ruled) out.polarization = Polarization(1, 0);
  out.refined = std::is_same_v<R, WRational>;
  out.series = s;
  return out;
}

template <class R>
const PuiseuxSeries<R>& series_of(const InvariantSeries& s) {
  return std::get<PuiseuxSeries<R>>(s.series);
}

InvariantSeries p2_rank3(Context& ctx, long steps, bool refined) {
  const DivisorClass c1 = DivisorClass::ruled(-1, -1);
  if (refined) return to_p2(wrap(3, c1, ctx.h3_refined(steps)));
  return to_p2(wrap(3, c1, ctx.h3_unrefined(steps)));
}

void check_rank3_euler(Context& ctx, Report& rep) {
  const long steps = ctx.depth(5);
  const RationalSeries& h = ctx.h3_unrefined(steps);
  for (const auto& [k, value] : reference_rank3()) {
    if (k > steps) break;
    const Rational got = h.coefficient(at(Rational(-5, 6), k));
    rep.expect(got == Rational(value),
               "q^(-5/6+" + std::to_string(k) + "): got " + got.to_string() + ", expected " + std::to_string(value));
  }
  rep.info.push_back("coefficients through q^(-5/6+" + std::to_string(steps) + ") match");
}

void check_table1(Context& ctx, Report& rep) {
  const long top = ctx.depth(kReferenceMaxC2);
  if (top < 2) {
    rep.info.push_back("no Table 1 row within the order");
    return;
  }
  const InvariantSeries p2 = p2_rank3(ctx, top, true);
  const BettiTable table = betti_table(series_of<WRational>(p2), 2, top);
  for (const BettiRow& row : table.rows) {
    const auto ref = std::find_if(reference_table().begin(), reference_table().end(),
                                  [&](const ReferenceRow& r) { return r.c2 == row.c2; });
    const std::string tag = "c2=" + std::to_string(row.c2);
    rep.expect(row.poincare.half_row() == ref->half, tag + ": Betti row " + row.poincare.to_string());
    rep.expect(row.chi == ref->chi, tag + ": chi " + std::to_string(row.chi));
  }
  rep.info.push_back("rows c2=2.." + std::to_string(top) + " match");
}

// sum_{n in Z + k/2} q^{n^2}, exact.
RationalSeries theta_half(int k, QExponent cutoff) {
  RationalSeries::TermMap t;
  for (long j = -200; j <= 200; ++j) {
    const Rational n = Rational(j) + Rational(k, 2);
    const QExponent e = QExponent::from_rational(n * n);
    if (e > cutoff) continue;
    t[e] += Rational(1);
  }
  return RationalSeries::from_terms(std::move(t), cutoff);
}

void check_closed_forms(Context& ctx, Report& rep) {
  const auto& wc = ctx.unrefined_;
  const auto& wr = ctx.refined_;
  const long steps = ctx.depth(12);
  const long rsteps = ctx.depth(8);
  // c1 = -C - f leads at q^{5/12}, c1 = -C at q^{-1/12}
  const Rational lead[2] = {Rational(-1, 12), Rational(5, 12)};
  for (int alpha : {1, 0}) {
    const QExponent cut = at(lead[alpha], steps);
    const QExponent margin = cut + QExponent::integer(2);
    const int k = (alpha + 1) % 2;
    // 3 Theta_k h_alpha / eta^8, Theta_k without the (-1)^k of B_{2,k}
    const RationalSeries closed = Rational(3) * theta_half(k, margin) *
                                  hclass_series(alpha, margin) * eta_power(-8, margin);
    const RationalSeries boundary = wc.h2_from_boundary(alpha, Polarization(1, 0), cut);
    const std::string tag = "alpha=" + std::to_string(alpha);
    rep.expect(boundary.agrees_through(require_through(closed, cut), cut), tag + ": unrefined closed form differs");
    rep.expect(!boundary.is_zero(), tag + ": boundary sum vanished");

    const QExponent rcut = at(lead[alpha], rsteps);
    const QExponent rmargin = rcut + QExponent::integer(2);
    const WSeries g = alpha == 1 ? g1(rmargin) : g0(rmargin);
    const WSeries rclosed = blowup_factor_refined(2, k, rmargin) * g * power(theta1_tilde_2z(rmargin), -2);
    const WSeries rboundary = wr.h2_from_boundary(alpha, Polarization(1, 0), rcut);
    rep.expect(rboundary.agrees_through(require_through(rclosed, rcut), rcut), tag + ": refined closed form differs");
  }
  rep.info.push_back("unrefined through " + std::to_string(steps) + " steps, refined through " +
                     std::to_string(rsteps));
}

void check_boundary_vanishing(Context& ctx, Report& rep) {
  const long steps = ctx.depth(8);
  const Polarization j01(0, 1);
  for (int alpha : {0, 1}) {
    const Rational base = base_exponent(2, DivisorClass::ruled(-1, -alpha), SurfaceModel::ruled());
    const QExponent cut = at(base, steps);
    const std::string tag = "alpha=" + std::to_string(alpha);
    rep.expect(ctx.unrefined_.h2_from_boundary(alpha, j01, cut).is_zero(), tag + ": boundary sum nonzero");
    rep.expect(ctx.unrefined_.h2_at(DivisorClass::ruled(-1, -alpha), j01, cut).is_zero(),
               tag + ": seed plus jump nonzero");
    rep.expect(ctx.refined_.h2_from_boundary(alpha, j01, cut).is_zero(), tag + ": refined boundary sum nonzero");
    rep.expect(ctx.refined_.h2_at(DivisorClass::ruled(-1, -alpha), j01, cut).is_zero(),
               tag + ": refined seed plus jump nonzero");
  }
  const QExponent cut3 = at(Rational(-5, 6), steps);
  rep.expect(ctx.unrefined_.h3(j01, cut3).is_zero(), "rank 3 nonzero");
  rep.expect(ctx.refined_.h3(j01, cut3).is_zero(), "refined rank 3 nonzero");
  rep.info.push_back("zero through " + std::to_string(steps) + " steps");
}

Polarization between(const Rational& lo, const Rational& hi, int weight_lo, int weight_hi) {
  const Rational t = (Rational(weight_lo) * lo + Rational(weight_hi) * hi) / Rational(weight_lo + weight_hi);
  return Polarization(t.numerator().get_si(), t.denominator().get_si());
}

void check_path_independence(Context& ctx, Report& rep) {
  const long steps = ctx.depth(8);
  const long rsteps = ctx.depth(4);
  const Rational lead[2] = {Rational(-1, 12), Rational(5, 12)};
  for (const Polarization j : {Polarization(1, 1), Polarization(3, 1), Polarization(5, 1)}) {
    for (int alpha : {1, 0}) {
      const DivisorClass c1 = DivisorClass::ruled(-1, -alpha);
      const std::string tag = "J" + j.to_string() + " c1=" + c1.to_string();
      const QExponent cut = at(lead[alpha], steps);
      rep.expect(ctx.unrefined_.h2_at(c1, j, cut) == ctx.unrefined_.h2_from_boundary(alpha, j, cut),
                 tag + ": seed plus jump differs from boundary sum");
      const QExponent rcut = at(lead[alpha], rsteps);
      rep.expect(ctx.refined_.h2_at(c1, j, rcut) == ctx.refined_.h2_from_boundary(alpha, j, rcut),
                 tag + ": refined seed plus jump differs");
    }
  }

  // rank-3 chambers at this cutoff
  const long steps3 = ctx.depth(6);
  const QExponent cut3 = at(Rational(-5, 6), steps3);
  const Rational reach = cut3.to_rational() + Rational(1, 2);
  std::set<Rational> ratios;
  for (const Wall& w : walls_for(WallFamily::rank3(), reach)) ratios.insert(Rational(w.ratio_m, w.ratio_n));
  if (ratios.size() < 2) {
    rep.info.push_back("fewer than two rank-3 walls in range");
    return;
  }
  const std::vector<Rational> sorted(ratios.begin(), ratios.end());
  const std::size_t mid = sorted.size() / 2;
  const Rational lo = sorted[mid - 1];
  const Rational hi = sorted[mid];
  const Polarization j1 = between(lo, hi, 2, 1);
  const Polarization j2 = between(lo, hi, 1, 2);
  const RationalSeries a = ctx.unrefined_.h3(j1, cut3);
  rep.expect(a == ctx.unrefined_.h3(j2, cut3), "h3 differs inside the chamber (" + lo.to_string() + ", " +
                                                   hi.to_string() + ")");
  const Polarization above = between(sorted.back(), sorted.back() + Rational(1), 1, 1);
  rep.expect(ctx.unrefined_.h3(above, cut3) == ctx.h3_unrefined(steps3),
             "h3 beyond the last wall differs from J_{1,0}");
  const Polarization across = between(hi, mid + 1 < sorted.size() ? sorted[mid + 1] : hi + Rational(1), 1, 1);
  rep.expect(!(a == ctx.unrefined_.h3(across, cut3)), "h3 does not jump across the wall at " + hi.to_string());
  rep.info.push_back(std::to_string(sorted.size()) + " rank-3 walls; chamber (" + lo.to_string() + ", " +
                     hi.to_string() + ") consistent");
}

void check_semi_primitive(Context& ctx, Report& rep) {
  std::uniform_int_distribution<long> small(-6, 6);
  std::uniform_int_distribution<int> side(0, 1);
  std::uniform_int_distribution<int> target(-1, 1);
  const int samples = 200;
  int orientation_sensitive = 0;
  for (int i = 0; i < samples; ++i) {
    SemiPrimitiveInput in;
    in.pairing = small(ctx.rng());
    in.sgn_from = side(ctx.rng()) == 0 ? -1 : 1;
    in.sgn_to = target(ctx.rng());
    in.omega_2g1 = Rational(small(ctx.rng()), 4);
    in.omega_g1 = Rational(small(ctx.rng()));
    in.omega_g2 = Rational(small(ctx.rng()));
    in.omega_g1g2 = Rational(small(ctx.rng()));
    const SemiPrimitiveJump j = delta_omega_semiprimitive(in);
    std::ostringstream tag;
    tag << "k=" << in.pairing << " sgn " << in.sgn_from << "->" << in.sgn_to;
    rep.expect(j.normalized == j.simplified, tag.str() + ": normalized " + j.normalized.to_string() +
                                                 " vs simplified " + j.simplified.to_string());
    if (in.sgn_from < 0) rep.expect(j.literal == j.simplified, tag.str() + ": literal differs");
    if (!(j.literal == j.simplified)) ++orientation_sensitive;
  }
  rep.info.push_back(std::to_string(samples) + " assignments agree (" + std::to_string(orientation_sensitive) +
                     " needed the orientation normalization)");
}

void check_refined_consistency(Context& ctx, Report& rep) {
  const long steps = ctx.depth(5);
  const RationalSeries& hu = ctx.h3_unrefined(steps);
  const WSeries& hr = ctx.h3_refined(steps);
  for (long k = 0; k <= steps; ++k) {
    const QExponent e = at(Rational(-5, 6), k);
    const Rational s = specialize_refined(hr.coefficient(e));
    rep.expect(s == hu.coefficient(e), "ruled q^(-5/6+" + std::to_string(k) + "): " + s.to_string());
  }
  const long top = ctx.depth(kReferenceMaxC2);
  if (top >= 2) {
    const RationalSeries pu = series_of<Rational>(p2_rank3(ctx, top, false));
    const WSeries pr = series_of<WRational>(p2_rank3(ctx, top, true));
    const BettiTable table = betti_table(pr, 2, top);
    for (const BettiRow& row : table.rows) {
      const QExponent e = exponent_for_c2(row.c2, 3, DivisorClass::p2(-1), SurfaceModel::p2());
      const Rational signed_chi = Rational(row.poincare.dim % 2 == 0 ? row.chi : -row.chi);
      rep.expect(signed_chi == pu.coefficient(e), "P^2 c2=" + std::to_string(row.c2) + ": refined chi " +
                                                      std::to_string(row.chi) + " vs " + pu.coefficient(e).to_string());
      rep.expect(specialize_refined(pr.coefficient(e)) == pu.coefficient(e),
                 "P^2 c2=" + std::to_string(row.c2) + ": specialization differs");
    }
  }
  rep.info.push_back("ruled through " + std::to_string(steps) + " steps, P^2 rows 2.." + std::to_string(top));
}

void expect_integral(Report& rep, const RationalSeries& s, const std::string& tag) {
  for (const auto& [e, c] : s.terms()) rep.expect(c.is_integer(), tag + " q^" + e.to_string() + ": " + c.to_string());
}

void check_integrality(Context& ctx, Report& rep) {
  const long steps = ctx.depth(12);
  const long short_steps = ctx.depth(5);
  expect_integral(rep, ctx.h3_unrefined(short_steps), "h3");
  const long top = ctx.depth(kReferenceMaxC2);
  if (top >= 2) {
    expect_integral(rep, series_of<Rational>(p2_rank3(ctx, top, false)), "h3(P^2)");
    const BettiTable table = betti_table(series_of<WRational>(p2_rank3(ctx, top, true)), 2, top);
    for (const BettiRow& row : table.rows) {
      const auto& b = row.poincare.betti;
      const std::string tag = "c2=" + std::to_string(row.c2);
      rep.expect(!b.empty() && b.front() == 1, tag + ": b0 != 1");
      rep.expect(std::equal(b.begin(), b.end(), b.rbegin()), tag + ": not palindromic");
      rep.expect(std::all_of(b.begin(), b.end(), [](long x) { return x >= 0; }), tag + ": negative Betti number");
    }
  }
  const Rational lead = Rational(5, 12);
  for (const Polarization j : {Polarization(1, 0), Polarization(2, 1)}) {
    expect_integral(rep, ctx.unrefined_.h2_at(DivisorClass::ruled(-1, -1), j, at(lead, steps)),
                    "h2(-C-f) J" + j.to_string());
  }
  // c1 = 0: Omega-bar corrected by the double-cover term
  const QExponent cut0 = at(Rational(-1, 3), steps);
  const RationalSeries bar0 = ctx.unrefined_.h2_at(DivisorClass::zero(SurfaceKind::Ruled), Polarization(1, 0), cut0);
  const RationalSeries int0 = rank2_integer_series(bar0, ctx.unrefined_);
  expect_integral(rep, int0, "h2(0) integer invariants");
  rep.expect(int0.cutoff() >= cut0, "h2(0) integer invariants truncated early");
  rep.info.push_back("integral through " + std::to_string(steps) + " steps; Betti rows palindromic");
}

template <class R>
void roundtrip(Report& rep, const InvariantSeries& ruled, int k, const std::string& tag) {
  const InvariantSeries p2 = to_p2(ruled);
  const InvariantSeries back = to_ruled(p2, k);
  const auto& orig = series_of<R>(ruled);
  const auto& again = series_of<R>(back);
  rep.expect(back.c1 == ruled.c1, tag + ": class " + back.c1.to_string() + " vs " + ruled.c1.to_string());
  rep.expect(again.cutoff() >= orig.cutoff() - QExponent::integer(1), tag + ": roundtrip lost more than one step");
  rep.expect(orig.agrees_through(again, std::min(again.cutoff(), orig.cutoff())), tag + ": roundtrip differs");
}

void check_blowup_roundtrip(Context& ctx, Report& rep) {
  const long steps = ctx.depth(8);
  // r = 2: the class (c - k)C + cf for c = -1
  for (int k = 0; k < 2; ++k) {
    const DivisorClass c1 = ruled_class(DivisorClass::p2(-1), k);
    const QExponent cut = at(base_exponent(2, c1, SurfaceModel::ruled()), steps);
    roundtrip<Rational>(rep, wrap(2, c1, ctx.unrefined_.h2_at(c1, Polarization(1, 0), cut)), k,
                        "r=2 k=" + std::to_string(k));
    roundtrip<WRational>(rep, wrap(2, c1, ctx.refined_.h2_at(c1, Polarization(1, 0), cut)), k,
                         "refined r=2 k=" + std::to_string(k));
  }
  // r = 3: start from the P^2 series and lift it to each k
  const long steps3 = std::max(ctx.depth(6), 1L);
  const InvariantSeries pu = p2_rank3(ctx, steps3, false);
  const InvariantSeries pr = p2_rank3(ctx, steps3, true);
  for (int k = 0; k < 3; ++k) {
    roundtrip<Rational>(rep, to_ruled(pu, k), k, "r=3 k=" + std::to_string(k));
    roundtrip<WRational>(rep, to_ruled(pr, k), k, "refined r=3 k=" + std::to_string(k));
  }
  rep.info.push_back("r=2 k=0,1 and r=3 k=0,1,2 restore the ruled series");
}

void check_hurwitz(Context&, Report& rep) {
  for (long n = 0; n <= 200; ++n) {
    const Rational lib = hurwitz(n);
    const Rational ref = oracle::hurwitz_analytic(n);
    rep.expect(lib == ref, "H(" + std::to_string(n) + "): " + lib.to_string() + " vs " + ref.to_string());
  }
  rep.expect(hurwitz(3) == Rational(1, 3), "H(3)");
  rep.expect(hurwitz(4) == Rational(1, 2), "H(4)");
  rep.expect(hurwitz(12) == Rational(4, 3), "H(12)");
  rep.info.push_back("H(0..200) agree");
}

struct Entry {
  CheckInfo info;
  std::function<void(Context&, Report&)> run;
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> list = {
      {{"A1", "rank3-euler"}, check_rank3_euler},
      {{"A2", "table1"}, check_table1},
      {{"A3", "closed-forms"}, check_closed_forms},
      {{"A4", "boundary-vanishing"}, check_boundary_vanishing},
      {{"A5", "path-independence"}, check_path_independence},
      {{"A6", "semi-primitive"}, check_semi_primitive},
      {{"A7", "refined-consistency"}, check_refined_consistency},
      {{"A8", "integrality"}, check_integrality},
      {{"A9", "blowup-roundtrip"}, check_blowup_roundtrip},
      {{"A10", "hurwitz"}, check_hurwitz},
  };
  return list;
}

}  // namespace

const std::vector<CheckInfo>& check_catalog() {
  static const std::vector<CheckInfo> catalog = [] {
    std::vector<CheckInfo> c;
    for (const Entry& e : entries()) c.push_back(e.info);
    return c;
  }();
  return catalog;
}

std::vector<CheckResult> run_checks(const CheckOptions& options) {
  for (const std::string& want : options.only) {
    const bool known = std::any_of(entries().begin(), entries().end(),
                                   [&](const Entry& e) { return e.info.id == want || e.info.name == want; });
    if (!known) throw std::invalid_argument("unknown check '" + want + "'");
  }
  Context ctx(options.order, options.seed);
  std::vector<CheckResult> results;
  for (const Entry& e : entries()) {
    if (!options.only.empty() &&
        std::none_of(options.only.begin(), options.only.end(),
                     [&](const std::string& w) { return w == e.info.id || w == e.info.name; })) {
      continue;
    }
    ctx.reset();
    CheckResult r;
    r.id = e.info.id;
    r.name = e.info.name;
    Report rep;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      e.run(ctx, rep);
    } catch (const std::exception& ex) {
      rep.failures.push_back(std::string("error: ") + ex.what());
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.passed = rep.failures.empty();
    r.reduced = ctx.reduced();
    r.detail = rep.detail();
    results.push_back(std::move(r));
  }
  return results;
}

std::string format_check_line(const CheckResult& r) {
  std::ostringstream os;
  os << (r.passed ? "PASS " : "FAIL ") << r.id << " " << r.name << ": " << r.detail;
  if (r.reduced) os << " [reduced coverage]";
  os << " (" << std::fixed << std::setprecision(2) << r.seconds << "s)";
  return os.str();
}

nlohmann::json checks_to_json(const std::vector<CheckResult>& results) {
  nlohmann::json list = nlohmann::json::array();
  bool all = true;
  for (const CheckResult& r : results) {
    all = all && r.passed;
    list.push_back({{"id", r.id},
                    {"name", r.name},
                    {"passed", r.passed},
                    {"reduced_coverage", r.reduced},
                    {"detail", r.detail}});
  }
  return {{"passed", all}, {"checks", list}};
}

}  // namespace sheafbetti
