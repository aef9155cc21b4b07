#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sheafbetti/puiseux_series.hpp"
#include "sheafbetti/surface.hpp"

namespace sheafbetti {

/// sgn with sgn(0) = 0.
inline int sgn(long x) { return (x > 0) - (x < 0); }

/// Weight of a primitive wall with pairing k: (-1)^k k, or -(w^k - w^-k).
template <CoefficientField R>
R wall_weight(long k);
template <>
inline Rational wall_weight<Rational>(long k) {
  return Rational(k % 2 == 0 ? k : -k);
}
template <>
inline WRational wall_weight<WRational>(long k) {
  return WRational(-WLaurent::antisymmetric(static_cast<int>(k)));
}

/// Lattice sums of the wall-crossing formulas.
///   Boundary2: u = 2b+1, v = 2a-alpha, reference sgn(u)   (from J_{0,1})
///   Delta2:    u = 2b-beta, v = 2a-alpha, reference sgn(-v) (from J_{1,0})
///   Boundary3: u = 3b+2, v = 3a-2, reference sgn(u)
/// Each term carries (sgn(un - vm) - reference)/2, pairing k = -u + 2v and
/// q-shift u(u + 2v)/4 (rank 2) or u(u + 2v)/12 (rank 3).
enum class SumKind { Boundary2, Delta2, Boundary3 };

struct WallTerm {
  long a = 0;
  long b = 0;
  long u = 0;
  long v = 0;
  long pairing = 0;
  Rational sgn_weight;
  QExponent q_shift;
};

/// Every term with nonzero weight and q-shift <= bound, ordered by (b, a).
/// Delta2 with beta = 0 at m = 0 has infinitely many terms at a single
/// exponent and throws std::domain_error.
std::vector<WallTerm> wall_terms(SumKind kind, int beta, int alpha, const Polarization& j, QExponent bound);

/// sum sgn_weight * wall_weight(k) q^shift, exact through `bound`.
template <CoefficientField R>
PuiseuxSeries<R> wall_sum(SumKind kind, int beta, int alpha, const Polarization& j, QExponent bound);

/// Generating functions on the ruled surface (and rank 1 on P^2).
/// R = Rational gives Euler numbers, R = WRational the refined invariants.
/// All series are returned exact through the requested cutoff.
template <CoefficientField R>
class WallCrossing {
 public:
  static constexpr bool kRefined = std::is_same_v<R, WRational>;

  explicit WallCrossing(const SurfaceModel& surface = SurfaceModel::ruled());

  const SurfaceModel& surface() const { return *surface_; }

  /// 1/eta^chi(S); refined 1/(theta1~(2z) eta), ruled surface only.
  PuiseuxSeries<R> h1(QExponent cutoff) const;
  PuiseuxSeries<R> h1_squared(QExponent cutoff) const;

  /// c1 = -C - alpha f, direct sum from the empty chamber at J_{0,1}.
  PuiseuxSeries<R> h2_from_boundary(int alpha, const Polarization& j, QExponent cutoff) const;
  /// Closed form at J_{1,0} for c1 = beta C - alpha f.
  PuiseuxSeries<R> h2_seed_J10(int beta, int alpha, QExponent cutoff) const;
  /// Change of h_{2, beta C - alpha f} from J_{1,0} to J.
  PuiseuxSeries<R> delta_h2(int beta, int alpha, const Polarization& j, QExponent cutoff) const;
  /// Any integral c1 = bC - af, reduced mod 2; sgn(0) = 0 averages on walls.
  PuiseuxSeries<R> h2_at(const DivisorClass& c1, const Polarization& j, QExponent cutoff) const;

  /// c1 = -C - f.
  PuiseuxSeries<R> h3(const Polarization& j, QExponent cutoff) const;

 private:
  void require_ruled(const char* what) const;
  const SurfaceModel* surface_;
};

extern template class WallCrossing<Rational>;
extern template class WallCrossing<WRational>;

/// Overall sign of the closed-form seeds at J_{1,0}, indexed [beta][alpha].
/// Unrefined: s * 3 Theta_k h_alpha / eta^8 with Theta_k = sum_{n in Z+k/2} q^{n^2},
/// k = alpha + beta mod 2. Refined: s * B_{2,k}(z) g_alpha / theta1~(2z)^2.
inline constexpr int kUnrefinedSeedSign[2][2] = {{-1, -1}, {1, 1}};
inline constexpr int kRefinedSeedSign[2][2] = {{1, 1}, {1, 1}};

/// Primitive jump (sgn_to - sgn_from)/2 * wall_weight(k) * omega1 * omega2.
template <CoefficientField R>
R delta_omega_primitive(long pairing, int sgn_from, int sgn_to, const R& omega1, const R& omega2) {
  return Rational(sgn_to - sgn_from, 2) * wall_weight<R>(pairing) * omega1 * omega2;
}

/// Same, with the pairing and sgn values computed from Chern data.
template <CoefficientField R>
R delta_omega_primitive(const ChernData& g1, const ChernData& g2, const Polarization& from, const Polarization& to,
                        const R& omega1, const R& omega2) {
  return delta_omega_primitive<R>(pairing_K(g1, g2), sgn(degree_J(g1, g2, from)), sgn(degree_J(g1, g2, to)),
                                  omega1, omega2);
}

/// Invariants entering a jump of 2G1 + G2, taken in the starting chamber.
struct SemiPrimitiveInput {
  long pairing = 0;   // <G1, G2>
  int sgn_from = -1;  // sgn I(G1, G2; J_from), nonzero
  int sgn_to = 1;     // sgn I(G1, G2; J_to)
  Rational omega_2g1;
  Rational omega_g1;
  Rational omega_g2;
  Rational omega_g1g2;  // Omega(G1 + G2) near the wall on the starting side
};

struct SemiPrimitiveJump {
  /// Three-term formula taken literally with starting-side invariants.
  Rational literal;
  /// Literal formula oriented from the I < 0 side and rescaled to this crossing.
  Rational normalized;
  /// Rational-invariant form with Omega-bar(2G1) and Omega(G1 + G2) on the wall.
  Rational simplified;
};

/// Throws std::invalid_argument when sgn_from is 0.
SemiPrimitiveJump delta_omega_semiprimitive(const SemiPrimitiveInput& in);

/// Generating function together with its bookkeeping.
struct InvariantSeries {
  int rank = 1;
  DivisorClass c1;
  SurfaceKind surface = SurfaceKind::Ruled;
  std::optional<Polarization> polarization;  // none on P^2
  bool refined = false;
  std::variant<RationalSeries, WSeries> series;
  std::vector<std::string> notes;

  /// Exponent r Delta - r chi(S)/24 at c2 = 0.
  Rational base_exponent() const;
};

/// r Delta - r chi(S)/24 for the Chern data (r, c1, c2 = 0).
Rational base_exponent(int r, const DivisorClass& c1, const SurfaceModel& s);

}  // namespace sheafbetti
