#include "sheafbetti/laurent.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace sheafbetti {

namespace {

using Poly = std::vector<Rational>;  // ascending powers, constant term first

void trim(Poly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

// Remainder of a modulo b (b nonzero, trimmed). Quotient written to q if given.
Poly poly_divmod(Poly a, const Poly& b, Poly* q) {
  trim(a);
  const std::size_t db = b.size() - 1;
  const Rational lead_inv = b.back().inverse();
  if (q) q->assign(a.size() >= b.size() ? a.size() - db : 0, Rational());
  while (a.size() >= b.size()) {
    const std::size_t shift = a.size() - b.size();
    const Rational factor = a.back() * lead_inv;
    if (q) (*q)[shift] = factor;
    for (std::size_t i = 0; i < db; ++i) {
      if (!b[i].is_zero()) a[shift + i] -= factor * b[i];
    }
    a.pop_back();
    trim(a);
  }
  return a;
}

void make_monic(Poly& p) {
  if (p.empty() || p.back().is_one()) return;
  const Rational inv = p.back().inverse();
  for (auto& c : p) c *= inv;
}

}  // namespace

WLaurent::WLaurent(const Rational& c) {
  if (!c.is_zero()) c_.push_back(c);
}

WLaurent WLaurent::monomial(int exponent, const Rational& c) {
  WLaurent p;
  if (!c.is_zero()) {
    p.low_ = exponent;
    p.c_.push_back(c);
  }
  return p;
}

WLaurent WLaurent::from_terms(const std::map<int, Rational>& terms) {
  if (terms.empty()) return {};
  const int low = terms.begin()->first;
  const int high = terms.rbegin()->first;
  std::vector<Rational> c(static_cast<std::size_t>(high - low + 1));
  for (const auto& [e, v] : terms) c[static_cast<std::size_t>(e - low)] = v;
  return WLaurent(low, std::move(c));
}

WLaurent WLaurent::antisymmetric(int k) { return monomial(k) - monomial(-k); }

void WLaurent::normalize() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  std::size_t lead = 0;
  while (lead < c_.size() && c_[lead].is_zero()) ++lead;
  if (lead == c_.size()) {
    c_.clear();
    low_ = 0;
    return;
  }
  if (lead > 0) {
    c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
    low_ += static_cast<int>(lead);
  }
}

int WLaurent::min_exponent() const {
  if (is_zero()) throw std::domain_error("zero Laurent polynomial has no exponents");
  return low_;
}

int WLaurent::max_exponent() const {
  if (is_zero()) throw std::domain_error("zero Laurent polynomial has no exponents");
  return low_ + static_cast<int>(c_.size()) - 1;
}

std::size_t WLaurent::term_count() const {
  return static_cast<std::size_t>(std::count_if(c_.begin(), c_.end(), [](const Rational& r) { return !r.is_zero(); }));
}

Rational WLaurent::coefficient(int exponent) const {
  if (exponent < low_ || exponent >= low_ + static_cast<int>(c_.size())) return {};
  return c_[static_cast<std::size_t>(exponent - low_)];
}

const Rational& WLaurent::leading_coefficient() const {
  if (is_zero()) throw std::domain_error("zero Laurent polynomial has no leading coefficient");
  return c_.back();
}

std::map<int, Rational> WLaurent::terms() const {
  std::map<int, Rational> out;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (!c_[i].is_zero()) out.emplace(low_ + static_cast<int>(i), c_[i]);
  }
  return out;
}

WLaurent WLaurent::shifted(int k) const {
  WLaurent p = *this;
  if (!p.is_zero()) p.low_ += k;
  return p;
}

WLaurent WLaurent::substitute_power(int m) const {
  if (m == 0) throw std::invalid_argument("substitute_power needs a nonzero power");
  if (is_zero() || m == 1) return *this;
  std::map<int, Rational> t;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (!c_[i].is_zero()) t.emplace((low_ + static_cast<int>(i)) * m, c_[i]);
  }
  return from_terms(t);
}

Rational WLaurent::evaluate(const Rational& w) const {
  if (is_zero()) return {};
  Rational acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc *= w;
    acc += *it;
  }
  if (low_ != 0) {
    if (w.is_zero()) {
      if (low_ < 0) throw std::domain_error("Laurent polynomial has a pole at w = 0");
      return {};
    }
    acc *= w.pow(low_);
  }
  return acc;
}

std::optional<WLaurent> WLaurent::divide_exact(const WLaurent& d) const {
  if (d.is_zero()) throw std::domain_error("division by the zero Laurent polynomial");
  if (is_zero()) return WLaurent{};
  Poly q;
  Poly r = poly_divmod(c_, d.c_, &q);
  if (!r.empty()) return std::nullopt;
  return WLaurent(low_ - d.low_, std::move(q));
}

WLaurent WLaurent::gcd(const WLaurent& a, const WLaurent& b) {
  Poly x = a.c_;
  Poly y = b.c_;
  if (x.size() < y.size()) std::swap(x, y);
  if (y.empty()) {
    if (x.empty()) return WLaurent{};
    make_monic(x);
    return WLaurent(0, std::move(x));
  }
  make_monic(y);
  while (!y.empty()) {
    if (y.size() == 1) return WLaurent(1);
    Poly r = poly_divmod(std::move(x), y, nullptr);
    make_monic(r);
    x = std::move(y);
    y = std::move(r);
  }
  return WLaurent(0, std::move(x));
}

WLaurent& WLaurent::operator+=(const WLaurent& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  const int low = std::min(low_, o.low_);
  const int high = std::max(max_exponent(), o.max_exponent());
  if (low < low_) {
    c_.insert(c_.begin(), static_cast<std::size_t>(low_ - low), Rational());
    low_ = low;
  }
  c_.resize(static_cast<std::size_t>(high - low_ + 1));
  for (std::size_t i = 0; i < o.c_.size(); ++i) {
    c_[static_cast<std::size_t>(o.low_ - low_) + i] += o.c_[i];
  }
  normalize();
  return *this;
}

WLaurent& WLaurent::operator-=(const WLaurent& o) { return *this += -o; }

WLaurent& WLaurent::operator*=(const Rational& s) {
  if (s.is_zero()) {
    c_.clear();
    low_ = 0;
    return *this;
  }
  for (auto& c : c_) c *= s;
  return *this;
}

WLaurent operator-(const WLaurent& a) {
  WLaurent r = a;
  for (auto& c : r.c_) c = -c;
  return r;
}

WLaurent operator*(const WLaurent& a, const WLaurent& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      if (!b.c_[j].is_zero()) c[i + j] += a.c_[i] * b.c_[j];
    }
  }
  return WLaurent(a.low_ + b.low_, std::move(c));
}

std::string WLaurent::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    const Rational& c = c_[i];
    if (c.is_zero()) continue;
    const int e = low_ + static_cast<int>(i);
    Rational mag = c.abs();
    if (first) {
      if (c.sign() < 0) os << '-';
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    first = false;
    if (e == 0) {
      os << mag;
      continue;
    }
    if (!mag.is_one()) os << mag << '*';
    os << 'w';
    if (e != 1) os << '^' << e;
  }
  return os.str();
}

// ---------------------------------------------------------------------------

WRational::WRational(WLaurent num, WLaurent den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
  reduce();
}

void WRational::reduce() {
  if (num_.is_zero()) {
    den_ = WLaurent(1);
    return;
  }
  if (!den_.is_constant()) {
    WLaurent g = WLaurent::gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = *num_.divide_exact(g);
      den_ = *den_.divide_exact(g);
    }
  }
  const int shift = den_.low_;
  if (shift != 0) {
    num_.low_ -= shift;
    den_.low_ = 0;
  }
  if (!den_.leading_coefficient().is_one()) {
    const Rational inv = den_.leading_coefficient().inverse();
    num_ *= inv;
    den_ *= inv;
  }
}

WRational WRational::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero rational function");
  return WRational(den_, num_);
}

WRational WRational::substitute_power(int m) const {
  if (m == 1) return *this;
  return WRational(num_.substitute_power(m), den_.substitute_power(m));
}

Rational WRational::evaluate(const Rational& w) const {
  const Rational d = den_.evaluate(w);
  if (d.is_zero()) throw std::domain_error("rational function has a pole at w = " + w.to_string());
  return num_.evaluate(w) / d;
}

WRational& WRational::operator+=(const WRational& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_.is_one() && o.den_.is_one()) {
    num_ += o.num_;
    return *this;
  }
  if (den_ == o.den_) {
    num_ += o.num_;
    reduce();
    return *this;
  }
  if (den_.is_one()) {
    // a + c/d = (a d + c)/d, already coprime to d
    num_ = num_ * o.den_ + o.num_;
    den_ = o.den_;
    return *this;
  }
  if (o.den_.is_one()) {
    num_ += o.num_ * den_;
    return *this;
  }
  num_ = num_ * o.den_ + o.num_ * den_;
  den_ = den_ * o.den_;
  reduce();
  return *this;
}

WRational& WRational::operator-=(const WRational& o) { return *this += -o; }

WRational& WRational::operator*=(const WRational& o) {
  if (is_zero()) return *this;
  if (o.is_zero()) return *this = WRational();
  if (den_.is_one() && o.den_.is_one()) {
    num_ = num_ * o.num_;
    return *this;
  }
  // Cross cancellation keeps the product reduced without a full gcd.
  WLaurent a = num_, b = den_, c = o.num_, d = o.den_;
  if (!d.is_one()) {
    WLaurent g = WLaurent::gcd(a, d);
    if (!g.is_constant()) {
      a = *a.divide_exact(g);
      d = *d.divide_exact(g);
    }
  }
  if (!b.is_one()) {
    WLaurent g = WLaurent::gcd(c, b);
    if (!g.is_constant()) {
      c = *c.divide_exact(g);
      b = *b.divide_exact(g);
    }
  }
  num_ = a * c;
  den_ = b * d;
  // Denominator factors are monic with nonzero constant term; only the
  // monomial/leading normalization can be off after cancellation.
  const int shift = den_.low_;
  if (shift != 0) {
    num_.low_ -= shift;
    den_.low_ = 0;
  }
  if (!den_.leading_coefficient().is_one()) {
    const Rational inv = den_.leading_coefficient().inverse();
    num_ *= inv;
    den_ *= inv;
  }
  return *this;
}

WRational& WRational::operator/=(const WRational& o) { return *this *= o.inverse(); }

WRational operator-(const WRational& a) { return WRational(-a.num_, a.den_, WRational::Reduced{}); }

std::string WRational::to_string() const {
  if (den_.is_one()) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

std::ostream& operator<<(std::ostream& os, const WLaurent& p) { return os << p.to_string(); }
std::ostream& operator<<(std::ostream& os, const WRational& f) { return os << f.to_string(); }

}  // namespace sheafbetti
