#pragma once

#include <random>

#include "sheafbetti/puiseux_series.hpp"

// Small random inputs for property tests.
struct Gen {
  std::mt19937_64 rng;
  explicit Gen(unsigned long seed) : rng(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }
  bool coin() { return integer(0, 1) == 1; }

  sheafbetti::Rational rational(long span = 9) {
    return sheafbetti::Rational(integer(-span, span), integer(1, 6));
  }
  sheafbetti::Rational nonzero_rational(long span = 9) {
    for (;;) {
      auto r = rational(span);
      if (!r.is_zero()) return r;
    }
  }

  sheafbetti::WLaurent laurent(int max_terms = 3) {
    std::map<int, sheafbetti::Rational> t;
    const long n = integer(1, max_terms);
    for (long i = 0; i < n; ++i) t[static_cast<int>(integer(-3, 3))] += rational();
    return sheafbetti::WLaurent::from_terms(t);
  }
  sheafbetti::WRational wrational() {
    sheafbetti::WLaurent den;
    while (den.is_zero()) den = laurent(2);
    return sheafbetti::WRational(laurent(), den);
  }

  // Exponents in [lo, lo + span] lattice steps of `step`, cutoff lo + span.
  sheafbetti::RationalSeries series(long lo, long span, long step = 6, int terms = 6) {
    using namespace sheafbetti;
    RationalSeries::TermMap t;
    for (int i = 0; i < terms; ++i) t[QExponent::from_lattice(lo + step * integer(0, span / step))] += rational();
    t[QExponent::from_lattice(lo)] = nonzero_rational();
    return RationalSeries::from_terms(t, QExponent::from_lattice(lo + span));
  }
  sheafbetti::WSeries wseries(long lo, long span, long step = 6, int terms = 4) {
    using namespace sheafbetti;
    WSeries::TermMap t;
    for (int i = 0; i < terms; ++i) t[QExponent::from_lattice(lo + step * integer(0, span / step))] += wrational();
    WRational lead;
    while (lead.is_zero()) lead = wrational();
    t[QExponent::from_lattice(lo)] = lead;
    return WSeries::from_terms(t, QExponent::from_lattice(lo + span));
  }
};
