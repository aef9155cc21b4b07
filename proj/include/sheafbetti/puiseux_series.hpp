#pragma once

#include <algorithm>
#include <concepts>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sheafbetti/laurent.hpp"
#include "sheafbetti/qexponent.hpp"
#include "sheafbetti/rational.hpp"

namespace sheafbetti {

/// Exact coefficient field: Rational or WRational.
template <class R>
concept CoefficientField = std::regular<R> && requires(R a, const R& b) {
  { a.is_zero() } -> std::convertible_to<bool>;
  { a + b } -> std::convertible_to<R>;
  { a - b } -> std::convertible_to<R>;
  { a * b } -> std::convertible_to<R>;
  { -a } -> std::convertible_to<R>;
  { a.inverse() } -> std::convertible_to<R>;
  R(1);
};

/// Truncated series in q with exponents on (1/kLatticeDen)Z and coefficients
/// in R. Every coefficient with exponent <= cutoff() is known exactly (zero
/// when absent); nothing is known beyond the cutoff. Only nonzero
/// coefficients are stored.
template <CoefficientField R>
class PuiseuxSeries {
 public:
  using Coefficient = R;
  using TermMap = std::map<QExponent, R>;

  /// The exact zero series.
  PuiseuxSeries() = default;

  static PuiseuxSeries zero(QExponent cutoff) { return PuiseuxSeries(TermMap{}, cutoff); }
  static PuiseuxSeries constant(const R& c, QExponent cutoff = QExponent::infinite()) {
    return monomial(QExponent(), c, cutoff);
  }
  static PuiseuxSeries monomial(QExponent e, const R& c, QExponent cutoff = QExponent::infinite()) {
    TermMap t;
    if (e <= cutoff && !c.is_zero()) t.emplace(e, c);
    return PuiseuxSeries(std::move(t), cutoff);
  }
  /// Drops zero coefficients and anything beyond the cutoff.
  static PuiseuxSeries from_terms(TermMap terms, QExponent cutoff) {
    std::erase_if(terms, [&](const auto& kv) { return kv.first > cutoff || kv.second.is_zero(); });
    return PuiseuxSeries(std::move(terms), cutoff);
  }

  QExponent cutoff() const { return cutoff_; }
  bool is_exact() const { return cutoff_.is_infinite(); }
  bool is_zero() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }

  std::optional<QExponent> leading_exponent() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.begin()->first;
  }
  const R& leading_coefficient() const {
    if (terms_.empty()) throw std::domain_error("zero series has no leading coefficient");
    return terms_.begin()->second;
  }
  /// Lower bound on the q-adic valuation: the leading exponent, or the
  /// first undetermined exponent when no nonzero term is known.
  QExponent valuation() const {
    if (!terms_.empty()) return terms_.begin()->first;
    return cutoff_.is_infinite() ? cutoff_ : cutoff_.next();
  }

  R coefficient(QExponent e) const {
    if (e > cutoff_) {
      throw std::out_of_range("coefficient at q^" + e.to_string() + " is beyond truncation (cutoff " +
                              cutoff_.to_string() + ")");
    }
    auto it = terms_.find(e);
    return it == terms_.end() ? R() : it->second;
  }

  PuiseuxSeries truncated(QExponent c) const {
    if (c >= cutoff_) return *this;
    TermMap t(terms_.begin(), terms_.upper_bound(c));
    return PuiseuxSeries(std::move(t), c);
  }

  /// Multiplication by q^e.
  PuiseuxSeries shifted(QExponent e) const {
    TermMap t;
    for (const auto& [k, v] : terms_) t.emplace_hint(t.end(), k + e, v);
    return PuiseuxSeries(std::move(t), cutoff_ + e);
  }

  /// q -> q^k for k >= 1.
  PuiseuxSeries scale_q(long k) const {
    if (k < 1) throw std::invalid_argument("scale_q needs k >= 1");
    TermMap t;
    for (const auto& [e, v] : terms_) t.emplace_hint(t.end(), e * k, v);
    return PuiseuxSeries(std::move(t), cutoff_ * k);
  }

  /// Multiplicative inverse, exact through cutoff - 2 * leading exponent.
  PuiseuxSeries inverse() const {
    if (terms_.empty()) throw std::domain_error("series is not invertible (zero through its cutoff)");
    if (cutoff_.is_infinite()) {
      throw std::domain_error("inverse of an exact series needs a finite truncation first");
    }
    const QExponent e0 = terms_.begin()->first;
    const long depth = (cutoff_ - e0).lattice();
    const R inv0 = terms_.begin()->second.inverse();
    std::vector<std::pair<long, const R*>> support;
    for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it) {
      support.emplace_back((it->first - e0).lattice(), &it->second);
    }
    std::vector<std::optional<R>> t(static_cast<std::size_t>(depth) + 1);
    t[0] = inv0;
    for (long n = 1; n <= depth; ++n) {
      R acc;
      bool any = false;
      for (const auto& [k, ck] : support) {
        if (k > n) break;
        const auto& prev = t[static_cast<std::size_t>(n - k)];
        if (!prev) continue;
        acc += *ck * *prev;
        any = true;
      }
      if (any && !acc.is_zero()) t[static_cast<std::size_t>(n)] = -(acc * inv0);
    }
    TermMap out;
    for (long n = 0; n <= depth; ++n) {
      if (t[static_cast<std::size_t>(n)]) {
        out.emplace_hint(out.end(), QExponent::from_lattice(n) - e0, std::move(*t[static_cast<std::size_t>(n)]));
      }
    }
    return PuiseuxSeries(std::move(out), cutoff_ - e0 - e0);
  }

  template <class F>
  auto map_coefficients(F f) const {
    using Out = std::decay_t<decltype(f(std::declval<const R&>()))>;
    typename PuiseuxSeries<Out>::TermMap t;
    for (const auto& [e, v] : terms_) t.emplace_hint(t.end(), e, f(v));
    return PuiseuxSeries<Out>::from_terms(std::move(t), cutoff_);
  }

  /// True if both series are known through `through` and agree there.
  bool agrees_through(const PuiseuxSeries& o, QExponent through) const {
    if (cutoff_ < through || o.cutoff_ < through) return false;
    auto a = terms_.begin();
    auto b = o.terms_.begin();
    for (;;) {
      const bool a_done = a == terms_.end() || a->first > through;
      const bool b_done = b == o.terms_.end() || b->first > through;
      if (a_done || b_done) return a_done && b_done;
      if (a->first != b->first || !(a->second == b->second)) return false;
      ++a;
      ++b;
    }
  }

  PuiseuxSeries& operator+=(const PuiseuxSeries& o) {
    cutoff_ = std::min(cutoff_, o.cutoff_);
    std::erase_if(terms_, [&](const auto& kv) { return kv.first > cutoff_; });
    for (const auto& [e, v] : o.terms_) {
      if (e > cutoff_) break;
      auto [it, inserted] = terms_.try_emplace(e, v);
      if (!inserted) {
        it->second += v;
        if (it->second.is_zero()) terms_.erase(it);
      }
    }
    return *this;
  }
  PuiseuxSeries& operator-=(const PuiseuxSeries& o) { return *this += -o; }
  PuiseuxSeries& operator*=(const R& c) {
    if (c.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& kv : terms_) kv.second *= c;
    return *this;
  }

  friend PuiseuxSeries operator+(PuiseuxSeries a, const PuiseuxSeries& b) { return a += b; }
  friend PuiseuxSeries operator-(PuiseuxSeries a, const PuiseuxSeries& b) { return a -= b; }
  friend PuiseuxSeries operator-(PuiseuxSeries a) {
    for (auto& kv : a.terms_) kv.second = -kv.second;
    return a;
  }
  friend PuiseuxSeries operator*(PuiseuxSeries a, const R& c) { return a *= c; }
  friend PuiseuxSeries operator*(const R& c, PuiseuxSeries a) { return a *= c; }

  /// Cauchy product; cutoff = min(s.cutoff + val(t), t.cutoff + val(s)).
  friend PuiseuxSeries operator*(const PuiseuxSeries& s, const PuiseuxSeries& t) {
    const QExponent cut = std::min(s.cutoff_ + t.valuation(), t.cutoff_ + s.valuation());
    TermMap out;
    for (const auto& [e1, c1] : s.terms_) {
      for (const auto& [e2, c2] : t.terms_) {
        const QExponent e = e1 + e2;
        if (e > cut) break;
        auto [it, inserted] = out.try_emplace(e, c1 * c2);
        if (!inserted) it->second += c1 * c2;
      }
    }
    return from_terms(std::move(out), cut);
  }

  friend bool operator==(const PuiseuxSeries& a, const PuiseuxSeries& b) {
    return a.cutoff_ == b.cutoff_ && a.terms_ == b.terms_;
  }

  std::string to_string() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, v] : terms_) {
      if (!first) os << " + ";
      first = false;
      os << "(" << v << ")*q^(" << e.to_string() << ")";
    }
    if (first) os << "0";
    if (!cutoff_.is_infinite()) os << " + O(q^>" << cutoff_.to_string() << ")";
    return os.str();
  }

 private:
  PuiseuxSeries(TermMap t, QExponent cutoff) : terms_(std::move(t)), cutoff_(cutoff) {}

  TermMap terms_;
  QExponent cutoff_ = QExponent::infinite();
};

/// s^n for any integer n (negative powers go through inverse()).
template <CoefficientField R>
PuiseuxSeries<R> power(const PuiseuxSeries<R>& s, int n) {
  if (n < 0) return power(s.inverse(), -n);
  PuiseuxSeries<R> result = PuiseuxSeries<R>::constant(R(1));
  PuiseuxSeries<R> base = s;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

/// Product truncated to `cutoff`; throws std::logic_error when the factors
/// were not supplied to enough precision.
template <CoefficientField R>
PuiseuxSeries<R> product_through(const PuiseuxSeries<R>& a, const PuiseuxSeries<R>& b, QExponent cutoff) {
  PuiseuxSeries<R> p = a * b;
  if (p.cutoff() < cutoff) {
    throw std::logic_error("insufficient precision: product exact through " + p.cutoff().to_string() +
                           ", requested " + cutoff.to_string());
  }
  return p.truncated(cutoff);
}

/// Requires `s` to be exact through `cutoff` and truncates to it.
template <CoefficientField R>
PuiseuxSeries<R> require_through(const PuiseuxSeries<R>& s, QExponent cutoff) {
  if (s.cutoff() < cutoff) {
    throw std::logic_error("insufficient precision: series exact through " + s.cutoff().to_string() +
                           ", requested " + cutoff.to_string());
  }
  return s.truncated(cutoff);
}

using RationalSeries = PuiseuxSeries<Rational>;
using WSeries = PuiseuxSeries<WRational>;

/// Embeds rational coefficients as constants in Q(w).
inline WSeries to_wseries(const RationalSeries& s) {
  return s.map_coefficients([](const Rational& c) { return WRational(c); });
}

/// w -> w^m in every coefficient.
inline WSeries substitute_w_power(const WSeries& s, int m) {
  if (m < 1) throw std::invalid_argument("substitute_w_power needs m >= 1");
  if (m == 1) return s;
  return s.map_coefficients([m](const WRational& c) { return c.substitute_power(m); });
}

}  // namespace sheafbetti
