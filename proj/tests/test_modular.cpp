#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "sheafbetti/modular.hpp"
#include "sheafbetti/oracles.hpp"

using namespace sheafbetti;

namespace {

QExponent qe(long num, long den = 1) { return QExponent::from_rational(Rational(num, den)); }

}  // namespace

TEST_CASE("eta agrees with the pentagonal number theorem") {
  const long terms = 40;
  const auto e = eta(qe(terms - 1) + qe(1, 24));
  const auto ref = oracle::pentagonal(terms);
  for (long n = 0; n < terms; ++n) CHECK(e.coefficient(qe(n) + qe(1, 24)) == ref[static_cast<std::size_t>(n)]);
  CHECK(e.coefficient(qe(5) + qe(1, 24)) == Rational(1));
  CHECK(e.coefficient(qe(7) + qe(1, 24)) == Rational(1));
  CHECK(e.coefficient(qe(12) + qe(1, 24)) == Rational(-1));
}

TEST_CASE("eta powers agree with dense products") {
  const long terms = 16;
  for (int k = -8; k <= 8; ++k) {
    const QExponent shift = QExponent::from_rational(Rational(k, 24));
    const auto s = eta_power(k, shift + qe(terms - 1));
    const auto ref = oracle::eta_product(k, terms);
    CAPTURE(k);
    CHECK(s.cutoff() >= shift + qe(terms - 1));
    for (long n = 0; n < terms; ++n) CHECK(s.coefficient(shift + qe(n)) == ref[static_cast<std::size_t>(n)]);
  }
  // 1/eta^4: 1, 4, 14, 40, 105
  const auto h = eta_power(-4, qe(5));
  CHECK(h.coefficient(qe(-1, 6) + qe(3)) == Rational(40));
  CHECK(h.coefficient(qe(-1, 6) + qe(4)) == Rational(105));
}

TEST_CASE("theta_1(2z) agrees with the triple product") {
  const long terms = 7;
  const auto th = theta1_tilde_2z(qe(1, 8) + qe(terms - 1));
  const auto ref = oracle::theta1_triple_product(terms);
  std::map<long, std::map<int, Rational>> grouped;
  for (const auto& [key, c] : ref) grouped[key.first][key.second] = c;
  for (long n = 0; n < terms; ++n) {
    const WRational got = th.coefficient(qe(1, 8) + qe(n));
    CAPTURE(n);
    CHECK(got == WRational(WLaurent::from_terms(grouped[n])));
  }
  // leading term (w - w^-1) q^{1/8}
  CHECK(th.leading_coefficient() == WRational(WLaurent::antisymmetric(1)));
}

TEST_CASE("Kronecker symbol oracle") {
  CHECK(oracle::kronecker(-3, 2) == -1);
  CHECK(oracle::kronecker(-4, 2) == 0);
  CHECK(oracle::kronecker(-7, 2) == 1);
  CHECK(oracle::kronecker(5, 3) == -1);
  CHECK(oracle::kronecker(2, 7) == 1);
  CHECK(oracle::kronecker(-1, 1) == 1);
  CHECK_THROWS(oracle::kronecker(3, 0));
}

TEST_CASE("Hurwitz class numbers against the analytic formula") {
  CHECK(hurwitz(0) == Rational(-1, 12));
  CHECK(hurwitz(3) == Rational(1, 3));
  CHECK(hurwitz(4) == Rational(1, 2));
  CHECK(hurwitz(7) == Rational(1));
  CHECK(hurwitz(8) == Rational(1));
  CHECK(hurwitz(11) == Rational(1));
  CHECK(hurwitz(12) == Rational(4, 3));
  CHECK(hurwitz(15) == Rational(2));
  CHECK(hurwitz(16) == Rational(3, 2));
  CHECK(hurwitz(1) == Rational(0));
  CHECK(hurwitz(2) == Rational(0));
  CHECK_THROWS_AS(hurwitz(-1), std::invalid_argument);
  for (long n = 0; n <= 400; ++n) {
    CAPTURE(n);
    CHECK(hurwitz(n) == oracle::hurwitz_analytic(n));
  }
}

TEST_CASE("Hurwitz cache roundtrip and files") {
  const HurwitzCache c(30);
  CHECK(c.bound() == 30);
  CHECK(c(12) == Rational(4, 3));
  CHECK_THROWS_AS(c(31), std::out_of_range);
  const HurwitzCache back = HurwitzCache::from_json(c.to_json());
  for (long n = 0; n <= 30; ++n) CHECK(back(n) == c(n));

  const auto dir = std::filesystem::temp_directory_path() / "sheafbetti_cache_test";
  std::filesystem::remove_all(dir);
  const HurwitzCache built = HurwitzCache::load_or_build(dir, 20);
  CHECK(std::filesystem::exists(dir / "hurwitz.json"));
  const HurwitzCache loaded = HurwitzCache::load_or_build(dir, 10);
  CHECK(loaded.bound() >= 10);
  CHECK(loaded(7) == Rational(1));
  // a file too short for the request is rebuilt
  const HurwitzCache longer = HurwitzCache::load_or_build(dir, 40);
  CHECK(longer.bound() == 40);
  CHECK(HurwitzCache::load_or_build("", 5).bound() == 5);
  {
    std::ofstream(dir / "hurwitz.json") << "not json";
  }
  CHECK(HurwitzCache::load_or_build(dir, 8)(8) == Rational(1));
  std::filesystem::remove_all(dir);
}

TEST_CASE("class number generating functions") {
  const auto h0 = hclass_series(0, qe(3));
  CHECK(h0.coefficient(qe(0)) == Rational(-1, 12));
  CHECK(h0.coefficient(qe(1)) == Rational(1, 2));
  CHECK(h0.coefficient(qe(2)) == Rational(1));
  CHECK(h0.coefficient(qe(3)) == Rational(4, 3));
  const auto h1 = hclass_series(1, qe(3));
  CHECK(h1.leading_exponent() == qe(3, 4));
  CHECK(h1.coefficient(qe(3, 4)) == Rational(1, 3));
  CHECK(h1.coefficient(qe(7, 4)) == Rational(1));
  CHECK(h1.coefficient(qe(11, 4)) == Rational(1));
  CHECK_THROWS_AS(hclass_series(2, qe(1)), std::invalid_argument);

  auto cache = std::make_shared<const HurwitzCache>(50);
  use_hurwitz_cache(cache);
  CHECK(hclass_series(1, qe(20)) == [] {
    use_hurwitz_cache(nullptr);
    return hclass_series(1, qe(20));
  }());
  use_hurwitz_cache(nullptr);
}

TEST_CASE("blow-up factors") {
  const auto b20 = blowup_factor_unrefined(2, 0, qe(3));
  CHECK(b20.leading_exponent() == qe(-1, 12));
  // (1 + 2q + 2q^4 ...)(1 + 2q + 5q^2 + ...)
  CHECK(b20.coefficient(qe(-1, 12) + qe(1)) == Rational(4));
  const auto b21 = blowup_factor_unrefined(2, 1, qe(3));
  CHECK(b21.leading_exponent() == qe(1, 6));
  CHECK(b21.leading_coefficient() == Rational(-2));
  const auto b30 = blowup_factor_unrefined(3, 0, qe(3));
  CHECK(b30.leading_exponent() == qe(-1, 8));
  CHECK(b30.coefficient(qe(-1, 8) + qe(1)) == Rational(9));
  const auto b31 = blowup_factor_unrefined(3, 1, qe(3));
  CHECK(b31 == blowup_factor_unrefined(3, 2, qe(3)));
  CHECK(b31.leading_exponent() == qe(5, 24));
  CHECK(b31.leading_coefficient() == Rational(3));
  CHECK_THROWS(blowup_factor_unrefined(4, 0, qe(1)));
  CHECK(blowup_factor_unrefined(2, 2, qe(1)) == blowup_factor_unrefined(2, 0, qe(1)));

  // refined factors specialize at w = 1 up to the (-1)^k of rank 2
  for (int r : {2, 3}) {
    for (int k = 0; k < r; ++k) {
      const auto ref = blowup_factor_refined(r, k, qe(3));
      const auto un = blowup_factor_unrefined(r, k, qe(3));
      const Rational sign(r == 2 && k == 1 ? -1 : 1);
      CAPTURE(r);
      CAPTURE(k);
      CHECK(ref.cutoff() == un.cutoff());
      for (const auto& [e, c] : un.terms()) CHECK(ref.coefficient(e).evaluate(Rational(1)) == sign * c);
    }
  }
  const auto r31 = blowup_factor_refined(3, 1, qe(2));
  const auto r32 = blowup_factor_refined(3, 2, qe(2));
  for (const auto& [e, c] : r31.terms()) CHECK(c.substitute_power(-1) == r32.coefficient(e));
}

TEST_CASE("Appell-type functions") {
  const QExponent cut = qe(3);
  const auto a0 = g0(cut);
  const auto a1 = g1(cut);
  CHECK(a0.cutoff() >= cut);
  CHECK(a1.cutoff() >= cut);
  // g0 = 1/2 + q^{-3/4} w^5 S0 / theta_2(2z, 2tau)
  const QExponent wide = cut + qe(2);
  const WSeries lhs0 = WSeries::constant(WRational(Rational(1, 2)), wide) +
                       WSeries::monomial(qe(-3, 4), WRational(WLaurent::monomial(5)), wide) *
                           g0_appell_sum(wide) * theta2_2z_2tau(wide).inverse();
  CHECK(a0.agrees_through(lhs0.truncated(cut), cut));
  const WSeries lhs1 = WSeries::monomial(qe(-1, 4), WRational(WLaurent::monomial(3)), wide) *
                       g1_appell_sum(wide) * theta3_2z_2tau(wide).inverse();
  CHECK(a1.agrees_through(lhs1.truncated(cut), cut));
  // the constant term of g0 absorbs the n = 0 Appell term
  CHECK(a0.coefficient(qe(0)) ==
        WRational(WLaurent(1) - WLaurent::monomial(2), WLaurent(2) + WLaurent::monomial(2, Rational(2))));
}

TEST_CASE("mod_floor") {
  CHECK(mod_floor(-1, 3) == 2);
  CHECK(mod_floor(4, 3) == 1);
  CHECK(mod_floor(0, 2) == 0);
}
