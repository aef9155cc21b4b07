#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "sheafbetti/puiseux_series.hpp"
#include "sheafbetti/wallcross.hpp"

namespace sheafbetti {

// Divisibility data for a class G divisible by N: values keyed by the
// divisors d of N, value = invariant of G/d. Key 1 is G itself.
template <CoefficientField R>
using DivisorValues = std::map<long, R>;

/// Multi-cover kernel: unrefined 1/m^2; refined (-1)^{m+1}/m with w -> w^m.
template <CoefficientField R>
R cover_term(const R& omega, long m);
template <>
inline Rational cover_term<Rational>(const Rational& omega, long m) {
  return omega / Rational(m * m);
}
template <>
inline WRational cover_term<WRational>(const WRational& omega, long m) {
  return omega.substitute_power(static_cast<int>(m)) * WRational(Rational(m % 2 == 0 ? -1 : 1, m));
}

/// Omega-bar(G/d) = sum_{m | N/d} cover_term(Omega(G/(dm)), m) for every d.
template <CoefficientField R>
DivisorValues<R> bar_from_omega(const DivisorValues<R>& omega);
/// Recursive inverse of bar_from_omega. Throws std::invalid_argument when a
/// divisor of the largest key is missing.
template <CoefficientField R>
DivisorValues<R> omega_from_bar(const DivisorValues<R>& bar);
/// Closed Moebius form sum_{m | N} mu(m) * cover_term(Omega-bar(G/m), m). Always valid
/// unrefined; refined only for squarefree N (std::invalid_argument otherwise).
template <CoefficientField R>
R omega_from_bar_moebius(const DivisorValues<R>& bar);

long moebius(long n);

/// Integer-invariant series for rank 2, c1 = 0 mod 2 on the ruled surface:
/// unrefined h - (1/4) h1(2 tau); refined h + (1/2) h1(2z, 2tau).
template <CoefficientField R>
PuiseuxSeries<R> rank2_integer_series(const PuiseuxSeries<R>& h_bar, const WallCrossing<R>& wc);

class PoincareError : public std::runtime_error {
 public:
  enum class Kind { NotLaurent, ExponentRange, NonInteger, Negative, NotPalindromic, OddBetti };
  PoincareError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct PoincarePolynomial {
  long dim = 0;
  std::vector<long> betti;  // b_0 .. b_{2 dim}

  long euler() const;  // p(1)
  /// b_0, b_2, ..., up to degree dim.
  std::vector<long> half_row() const;
  std::string to_string() const;
};

/// p(w) = (w - w^-1) w^dim Omega(w), checked to be an honest Poincare
/// polynomial. Each failure raises PoincareError with its own kind.
PoincarePolynomial poincare_extract(const WRational& omega, long dim);

long euler_from_refined(const PoincarePolynomial& p);
/// chi = (-1)^dim Omega for an unrefined invariant. Throws on non-integers.
long euler_from_omega(const Rational& omega, long dim);
/// [(w - w^-1) Omega]_{w = -1}: the unrefined invariant of a refined one.
Rational specialize_refined(const WRational& omega);

struct BettiRow {
  long c2 = 0;
  PoincarePolynomial poincare;
  long chi = 0;
  bool extrapolated = false;
};

struct BettiTable {
  std::vector<BettiRow> rows;

  /// c2,b0,b2,...,chi with empty cells past each row's middle degree; a
  /// trailing "note" column appears only when some row is extrapolated.
  std::string to_csv() const;
  nlohmann::json to_json() const;
  std::string to_text() const;
};

/// Largest c2 of the reference range for rank 3, c1 = -H on P^2.
inline constexpr long kReferenceMaxC2 = 6;

/// Rows for rank 3, c1 = -H on P^2 from the refined generating function.
/// Throws std::out_of_range when the series is too short.
BettiTable betti_table(const WSeries& h_p2_refined, long c2_min, long c2_max);

/// c2 of the coefficient at exponent e in h_{r,c1}.
Rational c2_from_exponent(const QExponent& e, int r, const DivisorClass& c1, const SurfaceModel& s);
QExponent exponent_for_c2(long c2, int r, const DivisorClass& c1, const SurfaceModel& s);

}  // namespace sheafbetti
