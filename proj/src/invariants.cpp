#include "sheafbetti/invariants.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace sheafbetti {

namespace {

template <CoefficientField R>
long check_divisors(const DivisorValues<R>& values) {
  if (values.empty()) throw std::invalid_argument("no invariants supplied");
  const long n = values.rbegin()->first;
  if (values.begin()->first < 1) throw std::invalid_argument("divisor keys must be positive");
  for (long d = 1; d <= n; ++d) {
    if (n % d == 0 && !values.contains(d)) {
      throw std::invalid_argument("missing invariant for G/" + std::to_string(d));
    }
    if (n % d != 0 && values.contains(d)) {
      throw std::invalid_argument(std::to_string(d) + " does not divide " + std::to_string(n));
    }
  }
  return n;
}

}  // namespace

long moebius(long n) {
  if (n < 1) throw std::invalid_argument("Moebius function needs n >= 1");
  long result = 1;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    result = -result;
  }
  return n > 1 ? -result : result;
}

template <CoefficientField R>
DivisorValues<R> bar_from_omega(const DivisorValues<R>& omega) {
  const long n = check_divisors(omega);
  DivisorValues<R> bar;
  for (const auto& [d, _] : omega) {
    R sum;
    for (long m = 1; m <= n / d; ++m) {
      if ((n / d) % m == 0) sum += cover_term<R>(omega.at(d * m), m);
    }
    bar.emplace(d, std::move(sum));
  }
  return bar;
}

template <CoefficientField R>
DivisorValues<R> omega_from_bar(const DivisorValues<R>& bar) {
  const long n = check_divisors(bar);
  DivisorValues<R> omega;
  for (auto it = bar.rbegin(); it != bar.rend(); ++it) {
    const long d = it->first;
    R value = it->second;
    for (long m = 2; m <= n / d; ++m) {
      if ((n / d) % m == 0) value -= cover_term<R>(omega.at(d * m), m);
    }
    omega.emplace(d, std::move(value));
  }
  return omega;
}

template <CoefficientField R>
R omega_from_bar_moebius(const DivisorValues<R>& bar) {
  const long n = check_divisors(bar);
  if constexpr (std::is_same_v<R, WRational>) {
    if (moebius(n) == 0) {
      throw std::invalid_argument("closed Moebius inversion of refined invariants needs squarefree divisibility");
    }
  }
  R sum;
  for (const auto& [m, value] : bar) {
    const long mu = moebius(m);
    if (mu != 0) sum += R(Rational(mu)) * cover_term<R>(value, m);
  }
  return sum;
}

template DivisorValues<Rational> bar_from_omega<Rational>(const DivisorValues<Rational>&);
template DivisorValues<WRational> bar_from_omega<WRational>(const DivisorValues<WRational>&);
template DivisorValues<Rational> omega_from_bar<Rational>(const DivisorValues<Rational>&);
template DivisorValues<WRational> omega_from_bar<WRational>(const DivisorValues<WRational>&);
template Rational omega_from_bar_moebius<Rational>(const DivisorValues<Rational>&);
template WRational omega_from_bar_moebius<WRational>(const DivisorValues<WRational>&);

template <CoefficientField R>
PuiseuxSeries<R> rank2_integer_series(const PuiseuxSeries<R>& h_bar, const WallCrossing<R>& wc) {
  if (h_bar.is_exact()) throw std::invalid_argument("integer-invariant series needs a truncated input");
  const long num = h_bar.cutoff().lattice();
  const long half = num >= 0 ? (num + 1) / 2 : -((-num) / 2);
  const PuiseuxSeries<R> doubled = wc.h1(QExponent::from_lattice(half)).scale_q(2);
  if constexpr (std::is_same_v<R, WRational>) {
    return h_bar + substitute_w_power(doubled, 2) * WRational(Rational(1, 2));
  } else {
    return h_bar - doubled * Rational(1, 4);
  }
}

template RationalSeries rank2_integer_series<Rational>(const RationalSeries&, const WallCrossing<Rational>&);
template WSeries rank2_integer_series<WRational>(const WSeries&, const WallCrossing<WRational>&);

long PoincarePolynomial::euler() const {
  long s = 0;
  for (long b : betti) s += b;
  return s;
}

std::vector<long> PoincarePolynomial::half_row() const {
  std::vector<long> out;
  for (long i = 0; i <= dim && i < static_cast<long>(betti.size()); i += 2) out.push_back(betti[static_cast<std::size_t>(i)]);
  return out;
}

std::string PoincarePolynomial::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < betti.size(); ++i) {
    if (betti[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0 || betti[i] != 1) os << betti[i];
    if (i > 0) os << "s" << (i > 1 ? "^" + std::to_string(i) : "");
  }
  if (first) os << "0";
  return os.str();
}

PoincarePolynomial poincare_extract(const WRational& omega, long dim) {
  using K = PoincareError::Kind;
  if (dim < 0) throw std::invalid_argument("negative moduli dimension");
  const WRational p = omega * WRational(WLaurent::antisymmetric(1).shifted(static_cast<int>(dim)));
  if (!p.is_laurent()) {
    throw PoincareError(K::NotLaurent, "(w - w^-1) w^dim Omega is not a Laurent polynomial: " + p.to_string());
  }
  const WLaurent& poly = p.numerator();
  PoincarePolynomial out;
  out.dim = dim;
  out.betti.assign(static_cast<std::size_t>(2 * dim + 1), 0);
  if (poly.is_zero()) return out;
  if (poly.min_exponent() < 0 || poly.max_exponent() > 2 * dim) {
    throw PoincareError(K::ExponentRange, "Poincare polynomial " + poly.to_string() + " has degrees outside [0, " +
                                              std::to_string(2 * dim) + "]");
  }
  for (const auto& [e, c] : poly.terms()) {
    if (!c.is_integer()) throw PoincareError(K::NonInteger, "non-integer Betti number " + c.to_string() + " at s^" + std::to_string(e));
    if (c.sign() < 0) throw PoincareError(K::Negative, "negative Betti number " + c.to_string() + " at s^" + std::to_string(e));
    out.betti[static_cast<std::size_t>(e)] = c.to_long();
  }
  for (long i = 1; i <= 2 * dim; i += 2) {
    if (out.betti[static_cast<std::size_t>(i)] != 0) {
      throw PoincareError(K::OddBetti, "odd Betti number b_" + std::to_string(i) + " = " +
                                           std::to_string(out.betti[static_cast<std::size_t>(i)]));
    }
  }
  for (long i = 0; i <= dim; ++i) {
    if (out.betti[static_cast<std::size_t>(i)] != out.betti[static_cast<std::size_t>(2 * dim - i)]) {
      throw PoincareError(K::NotPalindromic, "Poincare duality fails at b_" + std::to_string(i));
    }
  }
  return out;
}

long euler_from_refined(const PoincarePolynomial& p) { return p.euler(); }

long euler_from_omega(const Rational& omega, long dim) {
  const long value = omega.to_long();
  return dim % 2 == 0 ? value : -value;
}

Rational specialize_refined(const WRational& omega) {
  return (omega * WRational(WLaurent::antisymmetric(1))).evaluate(Rational(-1));
}

std::string BettiTable::to_csv() const {
  std::size_t width = 0;
  bool any_extrapolated = false;
  for (const auto& row : rows) {
    width = std::max(width, row.poincare.half_row().size());
    any_extrapolated = any_extrapolated || row.extrapolated;
  }
  std::ostringstream os;
  os << "c2";
  for (std::size_t i = 0; i < width; ++i) os << ",b" << 2 * i;
  os << ",chi";
  if (any_extrapolated) os << ",note";
  os << "\n";
  for (const auto& row : rows) {
    const auto half = row.poincare.half_row();
    os << row.c2;
    for (std::size_t i = 0; i < width; ++i) {
      os << ",";
      if (i < half.size()) os << half[i];
    }
    os << "," << row.chi;
    if (any_extrapolated) os << "," << (row.extrapolated ? "extrapolated" : "");
    os << "\n";
  }
  return os.str();
}

nlohmann::json BettiTable::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& row : rows) {
    arr.push_back({{"c2", row.c2},
                   {"dim", row.poincare.dim},
                   {"betti_even", row.poincare.half_row()},
                   {"poincare", row.poincare.betti},
                   {"chi", row.chi},
                   {"extrapolated", row.extrapolated}});
  }
  return {{"rank", 3}, {"c1", "-H"}, {"surface", "p2"}, {"rows", arr}};
}

std::string BettiTable::to_text() const {
  std::ostringstream os;
  for (const auto& row : rows) {
    os << "c2=" << row.c2 << " dim=" << row.poincare.dim << " b:";
    for (long b : row.poincare.half_row()) os << " " << b;
    os << " chi=" << row.chi;
    if (row.extrapolated) os << " (extrapolated)";
    os << "\n";
  }
  return os.str();
}

Rational c2_from_exponent(const QExponent& e, int r, const DivisorClass& c1, const SurfaceModel& s) {
  return e.to_rational() - base_exponent(r, c1, s);
}

QExponent exponent_for_c2(long c2, int r, const DivisorClass& c1, const SurfaceModel& s) {
  return QExponent::from_rational(base_exponent(r, c1, s) + Rational(c2));
}

BettiTable betti_table(const WSeries& h_p2_refined, long c2_min, long c2_max) {
  if (c2_min > c2_max) throw std::invalid_argument("empty c2 range");
  const auto& p2 = SurfaceModel::p2();
  const DivisorClass c1 = DivisorClass::p2(-1);
  BettiTable table;
  for (long c2 = c2_min; c2 <= c2_max; ++c2) {
    const long dim = moduli_dim(ChernData::from_c2(3, c1, Rational(c2)), p2);
    const QExponent e = exponent_for_c2(c2, 3, c1, p2);
    if (e > h_p2_refined.cutoff()) {
      throw std::out_of_range("generating function known through q^" + h_p2_refined.cutoff().to_string() +
                              ", row c2 = " + std::to_string(c2) + " needs q^" + e.to_string());
    }
    // primitive class: Omega = Omega-bar
    BettiRow row;
    row.c2 = c2;
    row.poincare = poincare_extract(h_p2_refined.coefficient(e), dim);
    row.chi = euler_from_refined(row.poincare);
    row.extrapolated = c2 > kReferenceMaxC2;
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace sheafbetti
