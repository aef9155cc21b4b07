#include "sheafbetti/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace sheafbetti {

Rational::Rational(long num, long den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational::Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  while (!s.empty() && s.front() == ' ') s.erase(s.begin());
  while (!s.empty() && s.back() == ' ') s.pop_back();
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  if (s.front() == '+') s.erase(s.begin());
  mpq_class v;
  if (v.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational literal '" + std::string(text) + "'");
  if (v.get_den() == 0) throw std::invalid_argument("rational literal with zero denominator");
  v.canonicalize();
  return Rational(std::move(v));
}

long Rational::to_long() const {
  if (!is_integer()) throw std::domain_error("rational " + to_string() + " is not an integer");
  const mpz_class& n = v_.get_num();
  if (!n.fits_slong_p()) throw std::overflow_error("integer " + to_string() + " does not fit a long");
  return n.get_si();
}

Rational Rational::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  return Rational(mpq_class(1 / v_));
}

Rational Rational::abs() const { return Rational(mpq_class(::abs(v_))); }

Rational Rational::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  Rational r(1);
  Rational b = *this;
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

long Rational::floor() const {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
  if (!q.fits_slong_p()) throw std::overflow_error("floor out of range");
  return q.get_si();
}

long Rational::ceil() const {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
  if (!q.fits_slong_p()) throw std::overflow_error("ceil out of range");
  return q.get_si();
}

std::string Rational::to_string() const { return v_.get_str(); }

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  v_ /= o.v_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

}  // namespace sheafbetti
