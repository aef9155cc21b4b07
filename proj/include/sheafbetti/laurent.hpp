#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sheafbetti/rational.hpp"

namespace sheafbetti {

/// Laurent polynomial in the auxiliary variable w with exact rational
/// coefficients. Stored densely from the lowest nonzero exponent; the
/// first and last stored coefficients are always nonzero.
class WLaurent {
 public:
  WLaurent() = default;
  template <std::integral I>
  WLaurent(I c) : WLaurent(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  WLaurent(const Rational& c);              // NOLINT(google-explicit-constructor)

  static WLaurent monomial(int exponent, const Rational& c = Rational(1));
  static WLaurent from_terms(const std::map<int, Rational>& terms);
  /// w^k - w^{-k}
  static WLaurent antisymmetric(int k);

  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && low_ == 0 && c_[0].is_one(); }
  bool is_constant() const { return is_zero() || (c_.size() == 1 && low_ == 0); }
  /// Lowest/highest exponent with a nonzero coefficient. Zero has none.
  int min_exponent() const;
  int max_exponent() const;
  std::size_t term_count() const;
  Rational coefficient(int exponent) const;
  const Rational& leading_coefficient() const;
  std::map<int, Rational> terms() const;

  WLaurent shifted(int k) const;  // times w^k
  /// Substitutes w -> w^m. m may be negative (w -> w^{-|m|}), not zero.
  WLaurent substitute_power(int m) const;
  Rational evaluate(const Rational& w) const;

  /// Quotient when `d` divides *this exactly in the Laurent ring.
  std::optional<WLaurent> divide_exact(const WLaurent& d) const;
  /// Monic greatest common divisor, normalized to lowest exponent 0.
  static WLaurent gcd(const WLaurent& a, const WLaurent& b);

  WLaurent& operator+=(const WLaurent& o);
  WLaurent& operator-=(const WLaurent& o);
  WLaurent& operator*=(const Rational& s);
  friend WLaurent operator+(WLaurent a, const WLaurent& b) { return a += b; }
  friend WLaurent operator-(WLaurent a, const WLaurent& b) { return a -= b; }
  friend WLaurent operator-(const WLaurent& a);
  friend WLaurent operator*(const WLaurent& a, const WLaurent& b);
  friend WLaurent operator*(WLaurent a, const Rational& s) { return a *= s; }
  friend WLaurent operator*(const Rational& s, WLaurent a) { return a *= s; }
  friend bool operator==(const WLaurent& a, const WLaurent& b) { return a.low_ == b.low_ && a.c_ == b.c_; }

  std::string to_string() const;

 private:
  friend class WRational;
  WLaurent(int low, std::vector<Rational> c) : low_(low), c_(std::move(c)) { normalize(); }
  void normalize();

  int low_ = 0;
  std::vector<Rational> c_;
};

/// Element of the field Q(w): a reduced ratio of Laurent polynomials.
/// Canonical form: the denominator is a monic polynomial with nonzero
/// constant term, coprime to the numerator. Zero is 0/1.
class WRational {
 public:
  WRational() : den_(1) {}
  template <std::integral I>
  WRational(I c) : num_(Rational(c)), den_(1) {}  // NOLINT(google-explicit-constructor)
  WRational(const Rational& c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  WRational(WLaurent p) : num_(std::move(p)), den_(1) {}  // NOLINT(google-explicit-constructor)
  WRational(WLaurent num, WLaurent den);

  const WLaurent& numerator() const { return num_; }
  const WLaurent& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return den_.is_one() && num_.is_one(); }
  bool is_laurent() const { return den_.is_one(); }

  WRational inverse() const;
  WRational substitute_power(int m) const;
  /// Value at a rational point; throws std::domain_error at a pole.
  Rational evaluate(const Rational& w) const;

  WRational& operator+=(const WRational& o);
  WRational& operator-=(const WRational& o);
  WRational& operator*=(const WRational& o);
  WRational& operator/=(const WRational& o);
  friend WRational operator+(WRational a, const WRational& b) { return a += b; }
  friend WRational operator-(WRational a, const WRational& b) { return a -= b; }
  friend WRational operator*(WRational a, const WRational& b) { return a *= b; }
  friend WRational operator/(WRational a, const WRational& b) { return a /= b; }
  friend WRational operator-(const WRational& a);
  friend bool operator==(const WRational& a, const WRational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  std::string to_string() const;

 private:
  struct Reduced {};
  WRational(WLaurent num, WLaurent den, Reduced) : num_(std::move(num)), den_(std::move(den)) {}
  void reduce();

  WLaurent num_;
  WLaurent den_;
};

std::ostream& operator<<(std::ostream& os, const WLaurent& p);
std::ostream& operator<<(std::ostream& os, const WRational& f);

}  // namespace sheafbetti
