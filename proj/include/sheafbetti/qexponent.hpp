#pragma once

#include <compare>
#include <limits>
#include <stdexcept>
#include <string>

#include "sheafbetti/rational.hpp"

#ifndef SHEAFBETTI_LATTICE_DEN
#define SHEAFBETTI_LATTICE_DEN 24
#endif

namespace sheafbetti {

/// Every q-exponent lives on (1/kLatticeDen)Z.
inline constexpr long kLatticeDen = SHEAFBETTI_LATTICE_DEN;

/// A q-exponent stored as an integer numerator over kLatticeDen. The
/// distinguished value `infinite()` marks series known exactly to all orders.
class QExponent {
 public:
  constexpr QExponent() = default;
  /// Exponent numerator/kLatticeDen.
  static constexpr QExponent from_lattice(long numerator) { return QExponent(numerator); }
  /// Throws std::domain_error if `r` is not on the lattice.
  static QExponent from_rational(const Rational& r);
  static QExponent integer(long n) { return QExponent(n * kLatticeDen); }
  static constexpr QExponent infinite() { return QExponent(kInfinite); }

  constexpr long lattice() const { return num_; }
  constexpr bool is_infinite() const { return num_ >= kInfinite; }
  Rational to_rational() const;
  std::string to_string() const;

  /// Next lattice point.
  QExponent next() const { return *this + QExponent(1); }

  friend QExponent operator+(QExponent a, QExponent b) {
    if (a.is_infinite() || b.is_infinite()) return infinite();
    return QExponent(a.num_ + b.num_);
  }
  friend QExponent operator-(QExponent a, QExponent b);
  friend QExponent operator-(QExponent a);
  /// Scaling by a positive integer.
  friend QExponent operator*(QExponent a, long k);
  friend constexpr bool operator==(QExponent a, QExponent b) = default;
  friend constexpr auto operator<=>(QExponent a, QExponent b) = default;

 private:
  static constexpr long kInfinite = std::numeric_limits<long>::max() / 4;
  constexpr explicit QExponent(long n) : num_(n >= kInfinite ? kInfinite : n) {}
  long num_ = 0;
};

inline QExponent QExponent::from_rational(const Rational& r) {
  const Rational scaled = r * Rational(kLatticeDen);
  if (!scaled.is_integer()) {
    throw std::domain_error("exponent " + r.to_string() + " is not on the 1/" + std::to_string(kLatticeDen) +
                            " lattice");
  }
  return QExponent(scaled.to_long());
}

inline Rational QExponent::to_rational() const {
  if (is_infinite()) throw std::domain_error("infinite exponent has no rational value");
  return Rational(num_, kLatticeDen);
}

inline std::string QExponent::to_string() const { return is_infinite() ? "inf" : to_rational().to_string(); }

inline QExponent operator-(QExponent a, QExponent b) {
  if (b.is_infinite()) throw std::domain_error("cannot subtract an infinite exponent");
  if (a.is_infinite()) return a;
  return QExponent(a.num_ - b.num_);
}

inline QExponent operator-(QExponent a) {
  if (a.is_infinite()) throw std::domain_error("cannot negate an infinite exponent");
  return QExponent(-a.num_);
}

inline QExponent operator*(QExponent a, long k) {
  if (k <= 0) throw std::invalid_argument("exponent scaling needs a positive factor");
  if (a.is_infinite()) return a;
  return QExponent(a.num_ * k);
}

}  // namespace sheafbetti
