#include <doctest.h>

#include <sstream>

#include "generators.hpp"
#include "sheafbetti/blowup.hpp"
#include "sheafbetti/invariants.hpp"

using namespace sheafbetti;

namespace {

QExponent qe(long num, long den = 1) { return QExponent::from_rational(Rational(num, den)); }

std::vector<long> divisors(long n) {
  std::vector<long> out;
  for (long d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

// Omega with (w - w^-1) w^dim Omega = p
WRational omega_for(const WLaurent& p, long dim) {
  return WRational(p, WLaurent::antisymmetric(1) * WLaurent::monomial(static_cast<int>(dim)));
}

WLaurent poly(const std::vector<long>& coeffs) {
  std::map<int, Rational> t;
  for (std::size_t i = 0; i < coeffs.size(); ++i) t[static_cast<int>(i)] = Rational(coeffs[i]);
  return WLaurent::from_terms(t);
}

const std::vector<std::vector<long>> kRows = {
    {1, 1},
    {1, 2, 5, 8, 10},
    {1, 2, 6, 12, 24, 38, 54, 59},
    {1, 2, 6, 13, 28, 52, 94, 149, 217, 273, 298},
    {1, 2, 6, 13, 29, 56, 108, 189, 322, 505, 744, 992, 1200, 1275},
};
const long kChi[] = {3, 42, 333, 1968, 9609};

WSeries refined_p2(long c2_max) {
  const WallCrossing<WRational> wc;
  const QExponent cut = exponent_for_c2(c2_max, 3, DivisorClass::p2(-1), SurfaceModel::p2()) - qe(-17, 24) + qe(-5, 6);
  InvariantSeries s;
  s.rank = 3;
  s.c1 = DivisorClass::ruled(-1, -1);
  s.polarization = Polarization(1, 0);
  s.refined = true;
  s.series = wc.h3(Polarization(1, 0), cut);
  return std::get<WSeries>(to_p2(s).series);
}

}  // namespace

TEST_CASE("Moebius function") {
  const long mu[] = {1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0};
  for (long n = 1; n <= 12; ++n) CHECK(moebius(n) == mu[n - 1]);
}

TEST_CASE("multi-cover sums by hand") {
  DivisorValues<Rational> omega{{1, Rational(3)}, {2, Rational(5)}};
  const auto bar = bar_from_omega(omega);
  CHECK(bar.at(2) == Rational(5));
  CHECK(bar.at(1) == Rational(3) + Rational(5, 4));
  DivisorValues<WRational> wo{{1, WRational(WLaurent::monomial(1))}, {2, WRational(WLaurent::monomial(1))}};
  // w^2 * (-1/2) from m = 2
  CHECK(bar_from_omega(wo).at(1) == WRational(WLaurent::monomial(1)) + WRational(WLaurent::monomial(2, Rational(-1, 2))));
  CHECK_THROWS_AS(omega_from_bar(DivisorValues<Rational>{{1, Rational(1)}, {4, Rational(1)}}), std::invalid_argument);
}

TEST_CASE("property: bar and omega are inverse") {
  Gen gen(51);
  for (long n : {1L, 2L, 3L, 4L, 6L, 9L, 12L}) {
    for (int trial = 0; trial < 5; ++trial) {
      DivisorValues<Rational> omega;
      DivisorValues<WRational> womega;
      for (long d : divisors(n)) {
        omega[d] = gen.rational();
        womega[d] = gen.wrational();
      }
      const auto bar = bar_from_omega(omega);
      CHECK(omega_from_bar(bar) == omega);
      CHECK(omega_from_bar_moebius(bar) == omega.at(1));
      const auto wbar = bar_from_omega(womega);
      CHECK(omega_from_bar(wbar) == womega);
      if (moebius(n) != 0) {
        CHECK(omega_from_bar_moebius(wbar) == womega.at(1));
      } else {
        CHECK_THROWS_AS(omega_from_bar_moebius(wbar), std::invalid_argument);
      }
    }
  }
}

TEST_CASE("Poincare extraction") {
  const auto p = poincare_extract(omega_for(poly({1, 0, 2, 0, 1}), 2), 2);
  CHECK(p.betti == std::vector<long>{1, 0, 2, 0, 1});
  CHECK(p.euler() == 4);
  CHECK(p.half_row() == std::vector<long>{1, 2});
  CHECK(euler_from_refined(p) == 4);

  const auto kind_of = [](const WRational& omega, long dim) {
    try {
      poincare_extract(omega, dim);
    } catch (const PoincareError& e) {
      return static_cast<int>(e.kind());
    }
    return -1;
  };
  using K = PoincareError::Kind;
  CHECK(kind_of(WRational(WLaurent(1), WLaurent::monomial(1) + WLaurent(2)), 1) == static_cast<int>(K::NotLaurent));
  CHECK(kind_of(omega_for(WLaurent::monomial(6), 1), 1) == static_cast<int>(K::ExponentRange));
  CHECK(kind_of(omega_for(poly({1, 0, 1}) * WLaurent(Rational(1, 2)), 1), 1) == static_cast<int>(K::NonInteger));
  CHECK(kind_of(omega_for(poly({1, 0, -1, 0, 1}), 2), 2) == static_cast<int>(K::Negative));
  CHECK(kind_of(omega_for(poly({1, 0, 2}), 1), 1) == static_cast<int>(K::NotPalindromic));
  CHECK(kind_of(omega_for(poly({1, 1, 1}), 1), 1) == static_cast<int>(K::OddBetti));
}

TEST_CASE("property: refined and unrefined Euler numbers agree") {
  Gen gen(52);
  for (int i = 0; i < 100; ++i) {
    const long dim = gen.integer(0, 8);
    std::vector<long> b(static_cast<std::size_t>(2 * dim + 1), 0);
    for (long j = 0; j <= dim; j += 2) {
      const long v = j == 0 ? 1 : gen.integer(0, 40);
      b[static_cast<std::size_t>(j)] = v;
      b[static_cast<std::size_t>(2 * dim - j)] = v;
    }
    const WRational omega = omega_for(poly(b), dim);
    const auto p = poincare_extract(omega, dim);
    CHECK(p.betti == b);
    const Rational un = specialize_refined(omega);
    CHECK(euler_from_omega(un, dim) == p.euler());
    CHECK(euler_from_refined(p) == p.euler());
  }
  CHECK(euler_from_omega(Rational(-5), 3) == 5);
  CHECK(euler_from_omega(Rational(5), 2) == 5);
  CHECK_THROWS(euler_from_omega(Rational(1, 2), 2));
}

TEST_CASE("c2 and exponents") {
  const auto& p2 = SurfaceModel::p2();
  CHECK(exponent_for_c2(2, 3, DivisorClass::p2(-1), p2) == qe(-17, 24) + qe(2));
  Gen gen(53);
  for (int i = 0; i < 50; ++i) {
    const int r = static_cast<int>(gen.integer(2, 3));
    const auto c1 = DivisorClass::ruled(gen.integer(-2, 0), gen.integer(-2, 0));
    const long c2 = gen.integer(-3, 20);
    const auto e = exponent_for_c2(c2, r, c1, SurfaceModel::ruled());
    CHECK(c2_from_exponent(e, r, c1, SurfaceModel::ruled()) == Rational(c2));
    CHECK(c2_from_exponent(e + qe(1), r, c1, SurfaceModel::ruled()) == Rational(c2 + 1));
  }
}

TEST_CASE("Betti table in every format") {
  const BettiTable table = betti_table(refined_p2(6), 2, 6);
  REQUIRE(table.rows.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(table.rows[i].c2 == static_cast<long>(i) + 2);
    CHECK(table.rows[i].poincare.half_row() == kRows[i]);
    CHECK(table.rows[i].chi == kChi[i]);
    CHECK_FALSE(table.rows[i].extrapolated);
  }

  std::ostringstream want;
  want << "c2";
  for (int j = 0; j <= 26; j += 2) want << ",b" << j;
  want << ",chi\n";
  for (std::size_t i = 0; i < 5; ++i) {
    want << i + 2;
    for (std::size_t j = 0; j < 14; ++j) {
      want << ',';
      if (j < kRows[i].size()) want << kRows[i][j];
    }
    want << ',' << kChi[i] << '\n';
  }
  CHECK(table.to_csv() == want.str());

  const auto j = table.to_json();
  CHECK(j["rows"].size() == 5);
  CHECK(j["rows"][1]["chi"] == 42);
  CHECK(j["rows"][1]["dim"] == 8);
  CHECK(j["rows"][0]["betti_even"] == nlohmann::json::array({1, 1}));
  CHECK(table.to_text().find("c2=3 dim=8 b: 1 2 5 8 10 chi=42") != std::string::npos);

  const BettiTable longer = betti_table(refined_p2(7), 7, 7);
  REQUIRE(longer.rows.size() == 1);
  CHECK(longer.rows[0].extrapolated);
  CHECK(longer.rows[0].chi == 40881);
  const std::string csv = longer.to_csv();
  CHECK(csv.find(",chi,note\n") != std::string::npos);
  CHECK(csv.find(",40881,extrapolated\n") != std::string::npos);
  CHECK(longer.to_text().find("(extrapolated)") != std::string::npos);

  CHECK_THROWS_AS(betti_table(refined_p2(3), 2, 5), std::out_of_range);
}

TEST_CASE("integer invariants for rank 2 with even c1") {
  const WallCrossing<Rational> wc;
  for (const Polarization& j : {Polarization(1, 0), Polarization(2, 1)}) {
    const auto h = wc.h2_at(DivisorClass::zero(SurfaceKind::Ruled), j, qe(6));
    const auto integral = rank2_integer_series(h, wc);
    CHECK(integral.cutoff() >= qe(5));
    for (const auto& [e, c] : integral.terms()) {
      CAPTURE(e.to_string());
      CHECK(c.is_integer());
    }
    // the bare series is not integral
    bool fractional = false;
    for (const auto& [e, c] : h.terms()) fractional = fractional || !c.is_integer();
    CHECK(fractional);
  }
}
