#include "sheafbetti/surface.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <stdexcept>

namespace sheafbetti {

namespace {

void same_surface(const DivisorClass& a, const DivisorClass& b) {
  if (a.surface != b.surface) throw std::invalid_argument("divisor classes live on different surfaces");
}

DivisorClass combine(const ChernData& g1, const ChernData& g2) {
  return static_cast<long>(g1.r) * g2.c1 - static_cast<long>(g2.r) * g1.c1;
}

std::string term(long coeff, const char* symbol, bool first) {
  std::string s;
  if (coeff < 0) {
    s = "-";
  } else if (!first) {
    s = "+";
  }
  if (coeff != 1 && coeff != -1) s += std::to_string(coeff < 0 ? -coeff : coeff);
  return s + symbol;
}

}  // namespace

const SurfaceModel& SurfaceModel::ruled() {
  static const SurfaceModel s{SurfaceKind::Ruled, "ruled", 2, 4, 1};
  return s;
}

const SurfaceModel& SurfaceModel::p2() {
  static const SurfaceModel s{SurfaceKind::P2, "p2", 1, 3, 1};
  return s;
}

const SurfaceModel& SurfaceModel::of(SurfaceKind kind) { return kind == SurfaceKind::Ruled ? ruled() : p2(); }

DivisorClass DivisorClass::canonical(SurfaceKind s) {
  // K = -2C + (2g - 2 - e) f at (g, e) = (0, 1)
  return s == SurfaceKind::Ruled ? ruled(-2, -3) : p2(-3);
}

std::string DivisorClass::to_string() const {
  if (is_zero()) return "0";
  if (surface == SurfaceKind::P2) return term(x, "H", true);
  std::string s;
  if (x != 0) s += term(x, "C", true);
  if (y != 0) s += term(y, "f", s.empty());
  return s;
}

DivisorClass operator+(const DivisorClass& a, const DivisorClass& b) {
  same_surface(a, b);
  return {a.surface, a.x + b.x, a.y + b.y};
}

DivisorClass operator-(const DivisorClass& a, const DivisorClass& b) {
  same_surface(a, b);
  return {a.surface, a.x - b.x, a.y - b.y};
}

long intersect(const DivisorClass& a, const DivisorClass& b) {
  same_surface(a, b);
  if (a.surface == SurfaceKind::P2) return a.x * b.x;
  return -a.x * b.x + a.x * b.y + a.y * b.x;
}

Polarization::Polarization(long m_, long n_) : m(m_), n(n_) {
  if (m < 0 || n < 0) throw std::invalid_argument("polarization J_{m,n} needs m, n >= 0");
  if (m == 0 && n == 0) throw std::invalid_argument("polarization J_{0,0} is not ample");
}

std::string Polarization::to_string() const { return std::to_string(m) + "," + std::to_string(n); }

ChernData ChernData::from_c2(int r, const DivisorClass& c1, const Rational& c2) {
  if (r < 1) throw std::invalid_argument("rank must be positive");
  return {r, c1, Rational(intersect(c1, c1), 2) - c2};
}

Rational ChernData::c2() const { return Rational(intersect(c1, c1), 2) - ch2; }

Rational ChernData::discriminant() const {
  const Rational c1sq(intersect(c1, c1));
  return (c2() - Rational(r - 1, 2 * r) * c1sq) / Rational(r);
}

ChernData operator+(const ChernData& a, const ChernData& b) { return {a.r + b.r, a.c1 + b.c1, a.ch2 + b.ch2}; }

Rational discriminant(const ChernData& g) { return g.discriminant(); }

long pairing_K(const ChernData& g1, const ChernData& g2) {
  const DivisorClass d = combine(g1, g2);
  return intersect(d, DivisorClass::canonical(d.surface));
}

long degree_J(const ChernData& g1, const ChernData& g2, const Polarization& j) {
  const DivisorClass d = combine(g1, g2);
  if (d.surface != SurfaceKind::Ruled) throw std::invalid_argument("J_{m,n} lives on the ruled surface");
  return intersect(d, j.divisor());
}

long moduli_dim(const ChernData& g, const SurfaceModel& s) {
  const long r2 = static_cast<long>(g.r) * g.r;
  const Rational dim = Rational(2 * r2) * g.discriminant() - Rational(r2 * s.holo_euler) + Rational(1);
  if (dim.sign() < 0) {
    throw std::domain_error("empty moduli space expected: dimension " + dim.to_string() + " for rank " +
                            std::to_string(g.r) + ", c1 = " + g.c1.to_string() + ", c2 = " + g.c2().to_string());
  }
  return dim.to_long();
}

Rational filtration_discriminant(const std::vector<ChernData>& quotients) {
  if (quotients.empty()) throw std::invalid_argument("filtration needs at least one quotient");
  ChernData total = quotients.front();
  for (std::size_t i = 1; i < quotients.size(); ++i) total = total + quotients[i];
  const long r = total.r;
  Rational result;
  for (const auto& e : quotients) result += Rational(e.r, r) * e.discriminant();
  // (mu(F_{i-1}) - mu(F_i))^2 = D^2 / (r(F_{i-1}) r(F_i))^2, D = r(F_i) c1(F_{i-1}) - r(F_{i-1}) c1(F_i)
  ChernData prev = quotients.front();
  Rational correction;
  for (std::size_t i = 1; i < quotients.size(); ++i) {
    const ChernData cur = prev + quotients[i];
    const DivisorClass d = static_cast<long>(cur.r) * prev.c1 - static_cast<long>(prev.r) * cur.c1;
    correction += Rational(intersect(d, d)) / Rational(static_cast<long>(quotients[i].r) * prev.r * cur.r);
    prev = cur;
  }
  return result - correction / Rational(2 * r);
}

WallFamily WallFamily::rank2(int alpha) {
  if (alpha != 0 && alpha != 1) throw std::invalid_argument("rank-2 family needs alpha in {0, 1}");
  return {2, alpha};
}

Rational WallFamily::shift(long a, long b) const {
  const long uu = u(b);
  const long vv = v(a);
  const long den = rank == 2 ? 4 : 12;
  return Rational(uu * (uu + 2 * vv), den);
}

std::vector<Wall> walls_for(const WallFamily& family, const Rational& exponent_bound) {
  if (family.rank != 2 && family.rank != 3) throw std::invalid_argument("walls are enumerated for rank 2 or 3");
  std::vector<Wall> out;
  if (exponent_bound.sign() <= 0) return out;
  // With u, v of one sign the shift is |u|(|u| + 2|v|)/den > 0, so
  // |u|^2 <= den * bound and |v| <= den * bound / (2|u|).
  const long r = family.rank;
  const long den = r == 2 ? 4 : 12;
  const long reach = (Rational(den) * exponent_bound).floor() + 2;
  const DivisorClass total = family.rank == 2 ? DivisorClass::ruled(-1, -family.alpha) : DivisorClass::ruled(-1, -1);
  for (long b = -reach; b <= reach; ++b) {
    const long u = family.u(b);
    if (u == 0 || u * u > den * exponent_bound.ceil()) continue;
    for (long a = -reach; a <= reach; ++a) {
      const long v = family.v(a);
      if (v == 0 || (u > 0) != (v > 0)) continue;
      const Rational s = family.shift(a, b);
      if (s > exponent_bound) continue;
      Wall w;
      w.a = a;
      w.b = b;
      const long g = std::gcd(u, v);
      w.ratio_m = std::abs(u / g);
      w.ratio_n = std::abs(v / g);
      w.pairing = -u + 2 * v;
      w.shift = s;
      const DivisorClass sub = DivisorClass::ruled(b, -a);
      w.gamma2 = ChernData::from_c2(static_cast<int>(r - 1), sub, Rational(0));
      w.gamma1 = ChernData::from_c2(1, total - sub, Rational(0));
      out.push_back(std::move(w));
    }
  }
  std::sort(out.begin(), out.end(), [](const Wall& x, const Wall& y) {
    const Rational rx(x.ratio_m, x.ratio_n);
    const Rational ry(y.ratio_m, y.ratio_n);
    if (rx != ry) return rx < ry;
    return std::pair(x.a, x.b) < std::pair(y.a, y.b);
  });
  return out;
}

std::vector<Wall> walls_for_discriminant(const WallFamily& family, const Rational& delta_max) {
  if (delta_max.sign() < 0) throw std::invalid_argument("discriminant bound must be >= 0");
  return walls_for(family, Rational(family.rank) * delta_max);
}

ReducedClass reduce_c1(int r, const DivisorClass& c1) {
  if (r < 1) throw std::invalid_argument("rank must be positive");
  auto red = [r](long x) {
    long m = x % r;
    if (m > 0) m -= r;
    return m;
  };
  DivisorClass rep{c1.surface, red(c1.x), c1.surface == SurfaceKind::Ruled ? red(c1.y) : 0};
  return {rep, c1 - rep};
}

DivisorClass parse_divisor(std::string_view text, SurfaceKind surface) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  }
  auto fail = [&](const std::string& why) {
    return std::invalid_argument("cannot parse divisor class '" + std::string(text) + "': " + why);
  };
  if (s.empty()) throw fail("empty");
  if (s == "0") return DivisorClass::zero(surface);
  DivisorClass d = DivisorClass::zero(surface);
  std::size_t i = 0;
  bool seen_x = false;
  bool seen_y = false;
  while (i < s.size()) {
    long sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (i != 0) {
      throw fail("expected '+' or '-'");
    }
    long coeff = 1;
    const std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) coeff = std::stol(s.substr(start, i - start));
    if (i < s.size() && s[i] == '*') ++i;
    if (i >= s.size()) {
      if (i > start) throw fail("constant terms other than 0 are not classes");
      throw fail("dangling sign");
    }
    const char sym = s[i++];
    if (surface == SurfaceKind::Ruled && (sym == 'C' || sym == 'f')) {
      bool& seen = sym == 'C' ? seen_x : seen_y;
      if (seen) throw fail(std::string("repeated ") + sym);
      seen = true;
      (sym == 'C' ? d.x : d.y) = sign * coeff;
    } else if (surface == SurfaceKind::P2 && sym == 'H') {
      if (seen_x) throw fail("repeated H");
      seen_x = true;
      d.x = sign * coeff;
    } else {
      throw fail(std::string("unknown symbol '") + sym + "' for this surface");
    }
  }
  return d;
}

Polarization parse_polarization(std::string_view text) {
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) {
    throw std::invalid_argument("polarization must be 'm,n', got '" + std::string(text) + "'");
  }
  try {
    std::size_t used = 0;
    auto trim = [](std::string_view v) {
      while (!v.empty() && std::isspace(static_cast<unsigned char>(v.front()))) v.remove_prefix(1);
      while (!v.empty() && std::isspace(static_cast<unsigned char>(v.back()))) v.remove_suffix(1);
      return std::string(v);
    };
    const std::string ms = trim(text.substr(0, comma));
    const std::string ns = trim(text.substr(comma + 1));
    const long m = std::stol(ms, &used);
    if (used != ms.size()) throw std::invalid_argument("trailing text");
    const long n = std::stol(ns, &used);
    if (used != ns.size()) throw std::invalid_argument("trailing text");
    return Polarization(m, n);
  } catch (const std::logic_error& e) {
    throw std::invalid_argument("polarization must be 'm,n' with integers m, n >= 0, got '" + std::string(text) +
                                "'");
  }
}

}  // namespace sheafbetti
