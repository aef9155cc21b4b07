#include "sheafbetti/wallcross.hpp"

#include <map>
#include <stdexcept>
#include <string>

#include "sheafbetti/modular.hpp"

namespace sheafbetti {

namespace {

QExponent exponent(long num, long den) { return QExponent::from_rational(Rational(num, den)); }

void check_bit(int x, const char* name) {
  if (x != 0 && x != 1) throw std::invalid_argument(std::string(name) + " must be 0 or 1");
}

void require_finite(QExponent cutoff) {
  if (cutoff.is_infinite()) throw std::invalid_argument("generating functions need a finite cutoff");
}

}  // namespace

std::vector<WallTerm> wall_terms(SumKind kind, int beta, int alpha, const Polarization& j, QExponent bound) {
  check_bit(alpha, "alpha");
  check_bit(beta, "beta");
  require_finite(bound);
  if (kind == SumKind::Delta2 && beta == 0 && j.m == 0) {
    throw std::domain_error("the change of h_{2, -alpha f} up to J_{0,1} diverges (all u = 0 terms share one exponent)");
  }
  // shift = u(u + 2v)/den
  const long den = kind == SumKind::Boundary3 ? 12 : 4;
  const long top = bound.lattice();
  std::vector<WallTerm> out;
  if (top <= 0) return out;
  // Nonzero weight forces u, v of one sign (or v = 0), where the shift is
  // |u|(|u| + 2|v|)/den >= |u|^2/den; this bounds both indices.
  const long reach = den * top / kLatticeDen + 5;
  for (long b = -reach; b <= reach; ++b) {
    const long u = kind == SumKind::Boundary2 ? 2 * b + 1 : kind == SumKind::Delta2 ? 2 * b - beta : 3 * b + 2;
    if (u == 0) continue;
    for (long a = -reach; a <= reach; ++a) {
      const long v = kind == SumKind::Boundary3 ? 3 * a - 2 : 2 * a - alpha;
      if ((u > 0 && v < 0) || (u < 0 && v > 0)) continue;
      const long lat = u * (u + 2 * v) * (kLatticeDen / den);
      if (lat > top) continue;
      const int reference = kind == SumKind::Delta2 ? sgn(-v) : sgn(u);
      const int twice = sgn(u * j.n - v * j.m) - reference;
      if (twice == 0) continue;
      out.push_back({a, b, u, v, -u + 2 * v, Rational(twice, 2), QExponent::from_lattice(lat)});
    }
  }
  return out;
}

template <CoefficientField R>
PuiseuxSeries<R> wall_sum(SumKind kind, int beta, int alpha, const Polarization& j, QExponent bound) {
  std::map<QExponent, R> acc;
  for (const auto& t : wall_terms(kind, beta, alpha, j, bound)) {
    acc[t.q_shift] += R(t.sgn_weight) * wall_weight<R>(t.pairing);
  }
  return PuiseuxSeries<R>::from_terms(typename PuiseuxSeries<R>::TermMap(acc.begin(), acc.end()), bound);
}

template RationalSeries wall_sum<Rational>(SumKind, int, int, const Polarization&, QExponent);
template WSeries wall_sum<WRational>(SumKind, int, int, const Polarization&, QExponent);

template <CoefficientField R>
WallCrossing<R>::WallCrossing(const SurfaceModel& surface) : surface_(&surface) {}

template <CoefficientField R>
void WallCrossing<R>::require_ruled(const char* what) const {
  if (surface_->kind != SurfaceKind::Ruled) {
    throw std::invalid_argument(std::string(what) + " is only available on the ruled surface");
  }
}

template <CoefficientField R>
PuiseuxSeries<R> WallCrossing<R>::h1(QExponent cutoff) const {
  require_finite(cutoff);
  if constexpr (kRefined) {
    require_ruled("refined rank-1 generating function");
    const QExponent margin = cutoff + QExponent::integer(1);
    const WSeries denom = theta1_tilde_2z(margin) * to_wseries(eta(margin));
    return require_through(denom.inverse(), cutoff);
  } else {
    return eta_power(-surface_->euler, cutoff);
  }
}

template <CoefficientField R>
PuiseuxSeries<R> WallCrossing<R>::h1_squared(QExponent cutoff) const {
  require_finite(cutoff);
  if constexpr (kRefined) {
    const auto h = h1(cutoff + exponent(1, 6));
    return require_through(h * h, cutoff);
  } else {
    return eta_power(-2 * surface_->euler, cutoff);
  }
}

template <CoefficientField R>
PuiseuxSeries<R> WallCrossing<R>::h2_from_boundary(int alpha, const Polarization& j, QExponent cutoff) const {
  require_ruled("rank-2 wall-crossing");
  require_finite(cutoff);
  const auto s = wall_sum<R>(SumKind::Boundary2, 0, alpha, j, cutoff + exponent(1, 3));
  return require_through(h1_squared(cutoff) * s, cutoff) * R(Rational(1, 2));
}

template <CoefficientField R>
PuiseuxSeries<R> WallCrossing<R>::h2_seed_J10(int beta, int alpha, QExponent cutoff) const {
  require_ruled("rank-2 closed forms");
  check_bit(alpha, "alpha");
  check_bit(beta, "beta");
  require_finite(cutoff);
  const int k = (alpha + beta) % 2;
  const QExponent margin = cutoff + QExponent::integer(1);
  if constexpr (kRefined) {
    const WSeries theta = theta1_tilde_2z(margin + QExponent::integer(1));
    const WSeries inv_theta_sq = (theta * theta).inverse();
    const WSeries g = alpha == 1 ? g1(margin) : g0(margin);
    const WSeries seed = blowup_factor_refined(2, k, margin) * g * inv_theta_sq;
    return require_through(seed, cutoff) * WRational(kRefinedSeedSign[beta][alpha]);
  } else {
    // Theta_k / eta^2 = (-1)^k B_{2,k}
    const RationalSeries seed =
        blowup_factor_unrefined(2, k, margin) * hclass_series(alpha, margin) * eta_power(-6, margin);
    const long sign = 3L * kUnrefinedSeedSign[beta][alpha] * (k == 1 ? -1 : 1);
    return require_through(seed, cutoff) * Rational(sign);
  }
}

template <CoefficientField R>
PuiseuxSeries<R> WallCrossing<R>::delta_h2(int beta, int alpha, const Polarization& j, QExponent cutoff) const {
  require_ruled("rank-2 wall-crossing");
  require_finite(cutoff);
  const auto s = wall_sum<R>(SumKind::Delta2, beta, alpha, j, cutoff + exponent(1, 3));
  return require_through(h1_squared(cutoff) * s, cutoff) * R(Rational(1, 2));
}

template <CoefficientField R>
PuiseuxSeries<R> WallCrossing<R>::h2_at(const DivisorClass& c1, const Polarization& j, QExponent cutoff) const {
  require_ruled("rank-2 wall-crossing");
  if (c1.surface != SurfaceKind::Ruled) throw std::invalid_argument("c1 must be a class on the ruled surface");
  // c1 = bC - af
  const int beta = static_cast<int>(mod_floor(c1.x, 2));
  const int alpha = static_cast<int>(mod_floor(-c1.y, 2));
  return h2_seed_J10(beta, alpha, cutoff) + delta_h2(beta, alpha, j, cutoff);
}

template <CoefficientField R>
PuiseuxSeries<R> WallCrossing<R>::h3(const Polarization& j, QExponent cutoff) const {
  require_ruled("rank-3 wall-crossing");
  require_finite(cutoff);
  // h3 = h1 * T with T = sum_terms c_t q^{s_t} (seed(t) + (1/2) h1^2 S_t), where
  // S_t is the Delta2 lattice sum of the rank-2 factor at J_{|u|,|v|}. Grouping
  // gives T = sum_{beta,alpha} seed * P_{beta,alpha} + (1/2) h1^2 Q.
  // val(h1) = -1/6, val(h1^2) = -1/3, rank-2 factors have val >= -1/3.
  const QExponent inner = cutoff + exponent(1, 6);
  const QExponent bound = inner + exponent(1, 3);
  using Map = std::map<QExponent, R>;
  Map p[2][2];
  Map q;
  for (const auto& t : wall_terms(SumKind::Boundary3, 0, 1, j, bound)) {
    const int beta = static_cast<int>(mod_floor(t.b, 2));
    const int alpha = static_cast<int>(mod_floor(t.a, 2));
    const R c = R(t.sgn_weight) * wall_weight<R>(t.pairing);
    p[beta][alpha][t.q_shift] += c;
    const Polarization wall_point(std::labs(t.u), std::labs(t.v));
    for (const auto& d : wall_terms(SumKind::Delta2, beta, alpha, wall_point, bound - t.q_shift)) {
      q[t.q_shift + d.q_shift] += c * R(d.sgn_weight) * wall_weight<R>(d.pairing);
    }
  }
  auto to_series = [&](const Map& m) {
    return PuiseuxSeries<R>::from_terms(typename PuiseuxSeries<R>::TermMap(m.begin(), m.end()), bound);
  };
  PuiseuxSeries<R> total = require_through(h1_squared(inner) * to_series(q), inner) * R(Rational(1, 2));
  for (int beta = 0; beta < 2; ++beta) {
    for (int alpha = 0; alpha < 2; ++alpha) {
      if (p[beta][alpha].empty()) continue;
      total += require_through(h2_seed_J10(beta, alpha, inner) * to_series(p[beta][alpha]), inner);
    }
  }
  return require_through(h1(cutoff) * total, cutoff);
}

template class WallCrossing<Rational>;
template class WallCrossing<WRational>;

SemiPrimitiveJump delta_omega_semiprimitive(const SemiPrimitiveInput& in) {
  if (in.sgn_from == 0) throw std::invalid_argument("the starting polarization must lie off the wall");
  if (in.sgn_from < -1 || in.sgn_from > 1 || in.sgn_to < -1 || in.sgn_to > 1) {
    throw std::invalid_argument("sgn values must be -1, 0 or 1");
  }
  const Rational k(in.pairing);
  const Rational eps(in.pairing % 2 == 0 ? 1 : -1);
  const Rational& a = in.omega_2g1;
  const Rational& b = in.omega_g2;
  const Rational& c = in.omega_g1;
  const Rational s(in.sgn_to - in.sgn_from, 2);

  auto literal = [&](const Rational& weight, const Rational& d) {
    return weight * (Rational(-2) * k * a * b + eps * k * c * d + Rational(1, 2) * k * b * c * (k * c - Rational(1)));
  };

  SemiPrimitiveJump out;
  out.literal = literal(s, in.omega_g1g2);
  if (in.sgn_from < 0) {
    out.normalized = out.literal;
  } else {
    // Omega(G1 + G2) in the I < 0 chamber, then the literal jump back out of it.
    const Rational opposite = in.omega_g1g2 - eps * k * c * b;
    out.normalized = s * literal(Rational(1), opposite);
  }
  const Rational bar_2g1 = a + c / Rational(4);
  const Rational g1g2_wall = in.omega_g1g2 - Rational(in.sgn_from, 2) * eps * k * c * b;
  out.simplified = s * k * (Rational(-2) * bar_2g1 * b + eps * c * g1g2_wall);
  return out;
}

Rational base_exponent(int r, const DivisorClass& c1, const SurfaceModel& s) {
  return -Rational(r - 1, 2 * r) * Rational(intersect(c1, c1)) - Rational(r * s.euler, 24);
}

Rational InvariantSeries::base_exponent() const {
  return sheafbetti::base_exponent(rank, c1, SurfaceModel::of(surface));
}

}  // namespace sheafbetti
