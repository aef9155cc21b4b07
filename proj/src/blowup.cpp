#include "sheafbetti/blowup.hpp"

#include <numeric>
#include <stdexcept>

namespace sheafbetti {

namespace {

template <CoefficientField R>
QExponent factor_cutoff(const PuiseuxSeries<R>& h) {
  if (h.is_exact()) throw std::invalid_argument("blow-up transfer needs a truncated series");
  // B_{r,k} has valuation below 1; one extra unit covers both product rules.
  const QExponent span = h.is_zero() ? QExponent() : h.cutoff() - h.valuation();
  return span + QExponent::integer(1);
}

template <CoefficientField R>
PuiseuxSeries<R> factor(int r, int k, QExponent cutoff) {
  return blowup_factor<R>(r, static_cast<int>(mod_floor(k, r)), cutoff);
}

}  // namespace

BlowupClass blowup_class(const DivisorClass& ruled_c1, int r) {
  if (ruled_c1.surface != SurfaceKind::Ruled) throw std::invalid_argument("expected a class on the ruled surface");
  return {DivisorClass::p2(ruled_c1.y), static_cast<int>(mod_floor(ruled_c1.y - ruled_c1.x, r))};
}

DivisorClass ruled_class(const DivisorClass& p2_c1, int k) {
  if (p2_c1.surface != SurfaceKind::P2) throw std::invalid_argument("expected a class on P^2");
  return DivisorClass::ruled(p2_c1.x - k, p2_c1.x);
}

template <CoefficientField R>
PuiseuxSeries<R> multiply_by_blowup(const PuiseuxSeries<R>& h, int r, int k) {
  return h * factor<R>(r, k, factor_cutoff(h));
}

template <CoefficientField R>
PuiseuxSeries<R> divide_by_blowup(const PuiseuxSeries<R>& h, int r, int k) {
  const auto b = factor<R>(r, k, factor_cutoff(h));
  if (b.is_zero()) throw std::domain_error("blow-up factor vanishes through its cutoff");
  return h * b.inverse();
}

template RationalSeries multiply_by_blowup<Rational>(const RationalSeries&, int, int);
template WSeries multiply_by_blowup<WRational>(const WSeries&, int, int);
template RationalSeries divide_by_blowup<Rational>(const RationalSeries&, int, int);
template WSeries divide_by_blowup<WRational>(const WSeries&, int, int);

InvariantSeries to_p2(const InvariantSeries& ruled) {
  if (ruled.surface != SurfaceKind::Ruled) throw std::invalid_argument("to_p2 expects a ruled-surface series");
  if (ruled.rank != 2 && ruled.rank != 3) throw std::invalid_argument("blow-up factors exist for rank 2 and 3");
  const BlowupClass cls = blowup_class(ruled.c1, ruled.rank);
  InvariantSeries out;
  out.rank = ruled.rank;
  out.c1 = cls.p2_class;
  out.surface = SurfaceKind::P2;
  out.refined = ruled.refined;
  out.notes = ruled.notes;
  out.series = std::visit(
      [&](const auto& s) -> std::variant<RationalSeries, WSeries> { return divide_by_blowup(s, ruled.rank, cls.k); },
      ruled.series);
  if (std::gcd(static_cast<long>(ruled.rank), cls.p2_class.x) != 1) {
    out.notes.push_back("warning: gcd(r, c1.H) = " + std::to_string(std::gcd(static_cast<long>(ruled.rank), cls.p2_class.x)) +
                        "; the blow-up relation is not established for this class in general");
  }
  return out;
}

InvariantSeries to_ruled(const InvariantSeries& p2, int k) {
  if (p2.surface != SurfaceKind::P2) throw std::invalid_argument("to_ruled expects a P^2 series");
  if (p2.rank != 2 && p2.rank != 3) throw std::invalid_argument("blow-up factors exist for rank 2 and 3");
  InvariantSeries out;
  out.rank = p2.rank;
  out.c1 = ruled_class(p2.c1, static_cast<int>(mod_floor(k, p2.rank)));
  out.surface = SurfaceKind::Ruled;
  out.polarization = Polarization(1, 0);
  out.refined = p2.refined;
  out.notes = p2.notes;
  out.series = std::visit(
      [&](const auto& s) -> std::variant<RationalSeries, WSeries> { return multiply_by_blowup(s, p2.rank, k); },
      p2.series);
  return out;
}

}  // namespace sheafbetti
