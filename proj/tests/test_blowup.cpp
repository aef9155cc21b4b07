#include <doctest.h>

#include "generators.hpp"
#include "sheafbetti/blowup.hpp"
#include "sheafbetti/invariants.hpp"

using namespace sheafbetti;

namespace {

QExponent qe(long num, long den = 1) { return QExponent::from_rational(Rational(num, den)); }

template <class R>
InvariantSeries ruled_series(int r, const DivisorClass& c1, const PuiseuxSeries<R>& s) {
  InvariantSeries out;
  out.rank = r;
  out.c1 = c1;
  out.polarization = Polarization(1, 0);
  out.refined = std::is_same_v<R, WRational>;
  out.series = s;
  return out;
}

template <class R>
PuiseuxSeries<R> p2_of(int r, const DivisorClass& ruled_c1, const PuiseuxSeries<R>& s) {
  return std::get<PuiseuxSeries<R>>(to_p2(ruled_series(r, ruled_c1, s)).series);
}

}  // namespace

TEST_CASE("class correspondence") {
  const BlowupClass b = blowup_class(DivisorClass::ruled(-1, -1), 3);
  CHECK(b.p2_class == DivisorClass::p2(-1));
  CHECK(b.k == 0);
  CHECK(blowup_class(DivisorClass::ruled(0, -1), 2).k == 1);
  CHECK(ruled_class(DivisorClass::p2(-1), 1) == DivisorClass::ruled(-2, -1));
  CHECK_THROWS(blowup_class(DivisorClass::p2(1), 2));
  CHECK_THROWS(ruled_class(DivisorClass::ruled(1, 1), 0));
}

TEST_CASE("property: class maps are inverse") {
  Gen gen(41);
  for (int i = 0; i < 200; ++i) {
    const int r = static_cast<int>(gen.integer(2, 3));
    const long c = gen.integer(-6, 6);
    const int k = static_cast<int>(gen.integer(0, r - 1));
    const BlowupClass b = blowup_class(ruled_class(DivisorClass::p2(c), k), r);
    CHECK(b.p2_class == DivisorClass::p2(c));
    CHECK(b.k == k);
  }
}

TEST_CASE("property: multiplying and dividing by B_{r,k} are inverse") {
  Gen gen(42);
  for (int i = 0; i < 30; ++i) {
    const int r = static_cast<int>(gen.integer(2, 3));
    const int k = static_cast<int>(gen.integer(0, r - 1));
    const auto s = gen.series(gen.integer(-30, 30), 96, 3);
    const auto back = divide_by_blowup(multiply_by_blowup(s, r, k), r, k);
    CHECK(back.cutoff() <= s.cutoff());
    CHECK(s.agrees_through(back, back.cutoff()));
    CHECK(back.cutoff() >= s.cutoff() - qe(1));
    if (i % 6 == 0) {
      const auto w = gen.wseries(gen.integer(-12, 12), 48, 6);
      const auto wb = multiply_by_blowup(divide_by_blowup(w, r, k), r, k);
      CHECK(w.agrees_through(wb, wb.cutoff()));
    }
  }
}

TEST_CASE("rank 2 on P^2 from either lift") {
  const WallCrossing<Rational> wc;
  const QExponent cut = qe(5);
  // -H lifts to -C-f (k = 0) and -2C-f (k = 1)
  const auto via0 = p2_of(2, DivisorClass::ruled(-1, -1), wc.h2_at(DivisorClass::ruled(-1, -1), Polarization(1, 0), cut));
  const auto via1 = p2_of(2, DivisorClass::ruled(-2, -1), wc.h2_at(DivisorClass::ruled(-2, -1), Polarization(1, 0), cut));
  const QExponent both = std::min(via0.cutoff(), via1.cutoff());
  CHECK(via0.agrees_through(via1, both));
  CHECK(both >= qe(7, 2));
  // 1, 9, 48 at c2 = 1, 2, 3
  CHECK(via0.coefficient(qe(1, 2)) == Rational(1));
  CHECK(via0.coefficient(qe(3, 2)) == Rational(9));
  CHECK(via0.coefficient(qe(5, 2)) == Rational(48));
  // c1 = 0 lifts to 0 (k = 0) and -C (k = 1)
  const auto z0 = p2_of(2, DivisorClass::zero(SurfaceKind::Ruled), wc.h2_at(DivisorClass::zero(SurfaceKind::Ruled), Polarization(1, 0), cut));
  const auto z1 = p2_of(2, DivisorClass::ruled(-1, 0), wc.h2_at(DivisorClass::ruled(-1, 0), Polarization(1, 0), cut));
  CHECK(z0.agrees_through(z1, std::min(z0.cutoff(), z1.cutoff())));

  const WallCrossing<WRational> wr;
  const QExponent rcut = qe(3);
  const auto r0 = p2_of(2, DivisorClass::ruled(-1, -1), wr.h2_at(DivisorClass::ruled(-1, -1), Polarization(1, 0), rcut));
  const auto r1 = p2_of(2, DivisorClass::ruled(-2, -1), wr.h2_at(DivisorClass::ruled(-2, -1), Polarization(1, 0), rcut));
  CHECK(r0.agrees_through(r1, std::min(r0.cutoff(), r1.cutoff())));
  // M(2, -H, 2) on P^2 has dimension 4 and Poincare polynomial 1 + 2s^2 + 3s^4 + 2s^6 + s^8
  const auto p = poincare_extract(r0.coefficient(qe(3, 2)), 4);
  CHECK(p.betti == std::vector<long>{1, 0, 2, 0, 3, 0, 2, 0, 1});
}

TEST_CASE("rank 3 on P^2") {
  const WallCrossing<Rational> wc;
  const auto p2 = p2_of(3, DivisorClass::ruled(-1, -1), wc.h3(Polarization(1, 0), qe(-5, 6) + qe(6)));
  const long chi[] = {3, 42, 333, 1968, 9609};
  for (long c2 = 2; c2 <= 6; ++c2) {
    CHECK(p2.coefficient(exponent_for_c2(c2, 3, DivisorClass::p2(-1), SurfaceModel::p2())) == Rational(chi[c2 - 2]));
  }
  CHECK(p2.coefficient(qe(-17, 24) + qe(1)) == Rational(0));
}

TEST_CASE("series-level maps and notes") {
  const WallCrossing<Rational> wc;
  const auto h = wc.h2_at(DivisorClass::zero(SurfaceKind::Ruled), Polarization(1, 0), qe(3));
  const InvariantSeries down = to_p2(ruled_series(2, DivisorClass::zero(SurfaceKind::Ruled), h));
  CHECK(down.surface == SurfaceKind::P2);
  CHECK(down.c1 == DivisorClass::p2(0));
  REQUIRE(down.notes.size() == 1);
  CHECK(down.notes[0].find("gcd") != std::string::npos);
  const InvariantSeries up = to_ruled(down, 0);
  CHECK(up.c1 == DivisorClass::zero(SurfaceKind::Ruled));
  CHECK(up.polarization == Polarization(1, 0));
  const auto& back = std::get<RationalSeries>(up.series);
  CHECK(h.agrees_through(back, back.cutoff()));

  const auto hf = wc.h2_at(DivisorClass::ruled(-1, -1), Polarization(1, 0), qe(3));
  CHECK(to_p2(ruled_series(2, DivisorClass::ruled(-1, -1), hf)).notes.empty());
  CHECK_THROWS_AS(to_p2(down), std::invalid_argument);
  CHECK_THROWS_AS(to_ruled(up, 0), std::invalid_argument);
  InvariantSeries rank1 = ruled_series(1, DivisorClass::zero(SurfaceKind::Ruled), hf);
  CHECK_THROWS_AS(to_p2(rank1), std::invalid_argument);
}
