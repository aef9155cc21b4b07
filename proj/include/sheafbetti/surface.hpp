#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "sheafbetti/rational.hpp"

namespace sheafbetti {

enum class SurfaceKind { Ruled, P2 };

/// The blown-up plane as the ruled surface (g, e) = (0, 1), basis C, f with
/// C^2 = -1, C.f = 1, f^2 = 0; or P^2 with H^2 = 1.
struct SurfaceModel {
  SurfaceKind kind;
  std::string name;
  int b2;
  int euler;       // chi(S)
  int holo_euler;  // chi(O_S)

  static const SurfaceModel& ruled();
  static const SurfaceModel& p2();
  static const SurfaceModel& of(SurfaceKind kind);
};

/// Integral class. On the ruled surface x*C + y*f; on P^2 x*H (y unused, 0).
struct DivisorClass {
  SurfaceKind surface = SurfaceKind::Ruled;
  long x = 0;
  long y = 0;

  static DivisorClass ruled(long c, long f) { return {SurfaceKind::Ruled, c, f}; }
  static DivisorClass p2(long h) { return {SurfaceKind::P2, h, 0}; }
  static DivisorClass canonical(SurfaceKind s);
  static DivisorClass zero(SurfaceKind s) { return {s, 0, 0}; }

  bool is_zero() const { return x == 0 && y == 0; }
  std::string to_string() const;

  friend DivisorClass operator+(const DivisorClass& a, const DivisorClass& b);
  friend DivisorClass operator-(const DivisorClass& a, const DivisorClass& b);
  friend DivisorClass operator-(const DivisorClass& a) { return {a.surface, -a.x, -a.y}; }
  friend DivisorClass operator*(long k, const DivisorClass& a) { return {a.surface, k * a.x, k * a.y}; }
  friend bool operator==(const DivisorClass&, const DivisorClass&) = default;
};

/// Throws std::invalid_argument for classes on different surfaces.
long intersect(const DivisorClass& a, const DivisorClass& b);

/// J_{m,n} = m(C+f) + n f on the ruled surface.
struct Polarization {
  long m = 1;
  long n = 0;

  Polarization() = default;
  /// Throws std::invalid_argument unless m, n >= 0 and not both zero.
  Polarization(long m, long n);
  DivisorClass divisor() const { return DivisorClass::ruled(m, m + n); }
  bool interior() const { return m > 0 && n > 0; }
  std::string to_string() const;
  friend bool operator==(const Polarization&, const Polarization&) = default;
};

struct ChernData {
  int r = 1;
  DivisorClass c1;
  Rational ch2;

  static ChernData from_c2(int r, const DivisorClass& c1, const Rational& c2);
  Rational c2() const;
  /// (1/r)(c2 - (r-1)/(2r) c1^2)
  Rational discriminant() const;

  friend ChernData operator+(const ChernData& a, const ChernData& b);
};

Rational discriminant(const ChernData& g);
/// <G1, G2> = (r1 c1(G2) - r2 c1(G1)).K
long pairing_K(const ChernData& g1, const ChernData& g2);
/// I(G1, G2; J) = (r1 c1(G2) - r2 c1(G1)).J
long degree_J(const ChernData& g1, const ChernData& g2, const Polarization& j);
/// 2 r^2 Delta - r^2 chi(O_S) + 1. Throws std::domain_error when negative.
long moduli_dim(const ChernData& g, const SurfaceModel& s);
/// Discriminant of a sheaf with the given successive quotients E_1, ..., E_s.
Rational filtration_discriminant(const std::vector<ChernData>& quotients);

/// Splits summed over in the wall-crossing sums. Rank 2: c1 = -C - alpha f,
/// subobject c1 = bC - af. Rank 3: c1 = -C - f, rank-2 piece c1 = bC - af.
struct WallFamily {
  int rank = 2;
  int alpha = 1;

  static WallFamily rank2(int alpha);
  static WallFamily rank3() { return {3, 1}; }
  /// (u, v) with wall locus m/n = u/v.
  long u(long b) const { return rank == 2 ? 2 * b + 1 : 3 * b + 2; }
  long v(long a) const { return rank == 2 ? 2 * a - alpha : 3 * a - 2; }
  /// q-shift u^2/4 + uv/2 (rank 2) or u^2/12 + uv/6 (rank 3).
  Rational shift(long a, long b) const;
};

struct Wall {
  long a = 0;
  long b = 0;
  long ratio_m = 0;  // reduced m : n of the wall locus
  long ratio_n = 0;
  long pairing = 0;  // <G1, G2> = -u + 2v
  Rational shift;
  ChernData gamma1;  // quotient, rank 1
  ChernData gamma2;  // subobject, c1 = bC - af
};

/// All (a, b) whose wall lies in the open quadrant and whose q-shift is at
/// most `exponent_bound`, sorted by ratio m/n then (a, b).
std::vector<Wall> walls_for(const WallFamily& family, const Rational& exponent_bound);
/// Same with bound r * delta_max.
std::vector<Wall> walls_for_discriminant(const WallFamily& family, const Rational& delta_max);

struct ReducedClass {
  DivisorClass representative;
  DivisorClass shift;  // c1 = representative + shift, shift in r H_2(S, Z)
};
/// Components reduced into (-r, 0].
ReducedClass reduce_c1(int r, const DivisorClass& c1);

/// "bC+af" style text: "-C-f", "2C-3f", "0", "-H".
DivisorClass parse_divisor(std::string_view text, SurfaceKind surface);
/// "m,n"
Polarization parse_polarization(std::string_view text);

}  // namespace sheafbetti
