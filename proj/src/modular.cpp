#include "sheafbetti/modular.hpp"

#include <fstream>
#include <map>
#include <stdexcept>
#include <string>

namespace sheafbetti {

static_assert(kLatticeDen % 24 == 0, "eta and theta exponents need a lattice denominator divisible by 24");

namespace {

QExponent exponent(long num, long den) { return QExponent::from_rational(Rational(num, den)); }

void require_finite(QExponent cutoff, const char* what) {
  if (cutoff.is_infinite()) throw std::invalid_argument(std::string(what) + " needs a finite cutoff");
}

/// Largest integer t with t <= cutoff, or -1 when cutoff < 0.
long integer_floor(QExponent cutoff) { return cutoff.to_rational().floor(); }

/// Collects (q-exponent, w-exponent, coefficient) triples into a series.
class WTermAccumulator {
 public:
  void add(QExponent e, int wexp, const Rational& c) { terms_[e][wexp] += c; }
  WSeries finish(QExponent cutoff) const {
    WSeries::TermMap out;
    for (const auto& [e, poly] : terms_) out.emplace(e, WRational(WLaurent::from_terms(poly)));
    return WSeries::from_terms(std::move(out), cutoff);
  }

 private:
  std::map<QExponent, std::map<int, Rational>> terms_;
};

}  // namespace

RationalSeries eta_power(int k, QExponent cutoff) {
  require_finite(cutoff, "eta");
  const QExponent lead = exponent(k, 24);
  if (cutoff < lead) return RationalSeries::zero(cutoff);
  const long depth = (cutoff - lead).lattice() / kLatticeDen;
  std::vector<long> sigma(static_cast<std::size_t>(depth) + 1, 0);
  for (long d = 1; d <= depth; ++d) {
    for (long m = d; m <= depth; m += d) sigma[static_cast<std::size_t>(m)] += d;
  }
  std::vector<Rational> a(static_cast<std::size_t>(depth) + 1);
  a[0] = Rational(1);
  for (long n = 1; n <= depth; ++n) {
    Rational s;
    for (long j = 1; j <= n; ++j) {
      const auto& prev = a[static_cast<std::size_t>(n - j)];
      if (!prev.is_zero()) s += Rational(sigma[static_cast<std::size_t>(j)]) * prev;
    }
    a[static_cast<std::size_t>(n)] = -Rational(k) * s / Rational(n);
  }
  RationalSeries::TermMap terms;
  for (long n = 0; n <= depth; ++n) terms.emplace(lead + QExponent::integer(n), a[static_cast<std::size_t>(n)]);
  return RationalSeries::from_terms(std::move(terms), cutoff);
}

RationalSeries eta(QExponent cutoff) { return eta_power(1, cutoff); }

WSeries theta1_tilde_2z(QExponent cutoff) {
  require_finite(cutoff, "theta_1");
  WTermAccumulator acc;
  for (long j = 0;; ++j) {
    const QExponent e = exponent((2 * j + 1) * (2 * j + 1), 8);
    if (e > cutoff) break;
    const int d = static_cast<int>(2 * j + 1);
    const Rational sign(j % 2 == 0 ? 1 : -1);
    acc.add(e, d, sign);
    acc.add(e, -d, -sign);
  }
  return acc.finish(cutoff);
}

WSeries theta2_2z_2tau(QExponent cutoff) {
  require_finite(cutoff, "theta_2");
  WTermAccumulator acc;
  // r = t/2 with t odd
  for (long t = 1;; t += 2) {
    const QExponent e = exponent(t * t, 4);
    if (e > cutoff) break;
    acc.add(e, static_cast<int>(t), Rational(1));
    acc.add(e, static_cast<int>(-t), Rational(1));
  }
  return acc.finish(cutoff);
}

WSeries theta3_2z_2tau(QExponent cutoff) {
  require_finite(cutoff, "theta_3");
  WTermAccumulator acc;
  for (long n = 0;; ++n) {
    const QExponent e = QExponent::integer(n * n);
    if (e > cutoff) break;
    acc.add(e, static_cast<int>(2 * n), Rational(1));
    if (n != 0) acc.add(e, static_cast<int>(-2 * n), Rational(1));
  }
  return acc.finish(cutoff);
}

Rational hurwitz(long n) {
  if (n < 0) throw std::invalid_argument("Hurwitz class number needs n >= 0, got " + std::to_string(n));
  if (n == 0) return Rational(-1, 12);
  if (n % 4 == 1 || n % 4 == 2) return Rational(0);
  Rational total;
  // reduced: |b| <= a <= c, b >= 0 if |b| == a or a == c; 3a^2 <= n
  for (long a = 1; 3 * a * a <= n; ++a) {
    for (long b = -a + 1; b <= a; ++b) {
      const long disc = b * b + n;
      if (disc % (4 * a) != 0) continue;
      const long c = disc / (4 * a);
      if (c < a || (c == a && b < 0)) continue;
      if (a == b && b == c) {
        total += Rational(1, 3);
      } else if (b == 0 && a == c) {
        total += Rational(1, 2);
      } else {
        total += Rational(1);
      }
    }
  }
  return total;
}

HurwitzCache::HurwitzCache(long bound) {
  if (bound < 0) throw std::invalid_argument("Hurwitz cache bound must be >= 0");
  values_.reserve(static_cast<std::size_t>(bound) + 1);
  for (long n = 0; n <= bound; ++n) values_.push_back(hurwitz(n));
}

const Rational& HurwitzCache::operator()(long n) const {
  if (n < 0 || n > bound()) {
    throw std::out_of_range("H(" + std::to_string(n) + ") outside cache bound " + std::to_string(bound()));
  }
  return values_[static_cast<std::size_t>(n)];
}

nlohmann::json HurwitzCache::to_json() const {
  nlohmann::json vals = nlohmann::json::array();
  for (const auto& v : values_) vals.push_back(v.to_string());
  return {{"bound", bound()}, {"values", vals}};
}

HurwitzCache HurwitzCache::from_json(const nlohmann::json& j) {
  HurwitzCache c;
  try {
    for (const auto& v : j.at("values")) c.values_.push_back(Rational::parse(v.get<std::string>()));
    if (c.bound() != j.at("bound").get<long>()) throw std::invalid_argument("bound does not match value count");
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed Hurwitz cache: ") + e.what());
  }
  if (c.values_.empty()) throw std::invalid_argument("empty Hurwitz cache");
  return c;
}

HurwitzCache HurwitzCache::load_or_build(const std::filesystem::path& dir, long bound) {
  if (dir.empty()) return HurwitzCache(bound);
  const auto file = dir / "hurwitz.json";
  if (std::ifstream in(file); in) {
    try {
      auto cached = from_json(nlohmann::json::parse(in));
      if (cached.bound() >= bound) return cached;
    } catch (const std::exception&) {
      // stale or corrupt; rebuild below
    }
  }
  HurwitzCache built(bound);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (std::ofstream out(file); out) out << built.to_json().dump() << '\n';
  return built;
}

namespace {
std::shared_ptr<const HurwitzCache> g_hurwitz_cache;
}

void use_hurwitz_cache(std::shared_ptr<const HurwitzCache> cache) { g_hurwitz_cache = std::move(cache); }

RationalSeries hclass_series(int j, QExponent cutoff) {
  const auto cache = g_hurwitz_cache;
  if (j != 0 && j != 1) throw std::invalid_argument("class number series index must be 0 or 1");
  require_finite(cutoff, "class number series");
  RationalSeries::TermMap terms;
  for (long n = 0;; ++n) {
    const QExponent e = exponent(4 * n + 3 * j, 4);
    if (e > cutoff) break;
    const long arg = 4 * n + 3 * j;
    terms.emplace(e, cache && arg <= cache->bound() ? (*cache)(arg) : hurwitz(arg));
  }
  return RationalSeries::from_terms(std::move(terms), cutoff);
}

WSeries g1_appell_sum(QExponent cutoff) {
  require_finite(cutoff, "g_1");
  const long top = integer_floor(cutoff);
  WTermAccumulator acc;
  for (long n = 1; n * n <= top; ++n) {
    for (long k = 0; n * n + (2 * n - 1) * k <= top; ++k) {
      acc.add(QExponent::integer(n * n + (2 * n - 1) * k), static_cast<int>(-2 * n + 4 * k), Rational(1));
    }
  }
  for (long n = 0; n * n + (1 - 2 * n) <= top; --n) {
    for (long k = 1; n * n + (1 - 2 * n) * k <= top; ++k) {
      acc.add(QExponent::integer(n * n + (1 - 2 * n) * k), static_cast<int>(-2 * n - 4 * k), Rational(-1));
    }
  }
  return acc.finish(cutoff);
}

WSeries g0_appell_sum(QExponent cutoff) {
  require_finite(cutoff, "g_0");
  const long top = integer_floor(cutoff);
  WTermAccumulator acc;
  for (long n = 1; n * n + n <= top; ++n) {
    for (long k = 0; n * n + n + (2 * n - 1) * k <= top; ++k) {
      acc.add(QExponent::integer(n * n + n + (2 * n - 1) * k), static_cast<int>(-2 * n + 4 * k), Rational(1));
    }
  }
  for (long n = 0; n * n - n + 1 <= top; --n) {
    for (long k = 1; n * n + n + (1 - 2 * n) * k <= top; ++k) {
      acc.add(QExponent::integer(n * n + n + (1 - 2 * n) * k), static_cast<int>(-2 * n - 4 * k), Rational(-1));
    }
  }
  return acc.finish(cutoff);
}

WSeries g1(QExponent cutoff) {
  require_finite(cutoff, "g_1");
  const QExponent shift = exponent(1, 4);
  const QExponent inner = cutoff + shift;
  const WSeries y = require_through(g1_appell_sum(inner) * theta3_2z_2tau(inner).inverse(), inner);
  const WRational w3(WLaurent::monomial(3));
  return y.shifted(-shift) * w3;
}

WSeries g0(QExponent cutoff) {
  require_finite(cutoff, "g_0");
  const QExponent shift = exponent(3, 4);
  const QExponent inner = cutoff + shift;
  const QExponent margin = cutoff + QExponent::integer(1);
  const WSeries y = require_through(g0_appell_sum(margin) * theta2_2z_2tau(margin).inverse(), inner);
  const WRational w5(WLaurent::monomial(5));
  return y.shifted(-shift) * w5 + WSeries::constant(WRational(Rational(1, 2)), cutoff);
}

namespace {

void check_blowup_rank(int r) {
  if (r != 2 && r != 3) throw std::invalid_argument("blow-up factor needs rank 2 or 3, got " + std::to_string(r));
}

/// Numerator lattice sum of B_{r,k}; `refined` inserts the w powers.
WSeries blowup_theta(int r, int k, QExponent cutoff, bool refined) {
  WTermAccumulator acc;
  const Rational bound = cutoff.to_rational();
  if (r == 2) {
    // n = t/2, t = k mod 2
    for (long t = -2 * (bound.floor() + 2) - k; t <= 2 * (bound.floor() + 2) + k; ++t) {
      if (mod_floor(t, 2) != k) continue;
      const QExponent e = exponent(t * t, 4);
      if (e > cutoff) continue;
      acc.add(e, refined ? static_cast<int>(t) : 0, Rational(1));
    }
  } else {
    // m = x/3, n = y/3 with x = y = k mod 3; x^2+xy+y^2 >= (3/4) x^2
    long reach = 3;
    while (reach * reach <= 12 * (bound.floor() + 1)) ++reach;
    for (long x = -reach; x <= reach; ++x) {
      if (mod_floor(x, 3) != k) continue;
      for (long y = -reach; y <= reach; ++y) {
        if (mod_floor(y, 3) != k) continue;
        const QExponent e = exponent(x * x + y * y + x * y, 9);
        if (e > cutoff) continue;
        acc.add(e, refined ? static_cast<int>((4 * x + 2 * y) / 3) : 0, Rational(1));
      }
    }
  }
  return acc.finish(cutoff);
}

}  // namespace

RationalSeries blowup_factor_unrefined(int r, int k, QExponent cutoff) {
  check_blowup_rank(r);
  require_finite(cutoff, "blow-up factor");
  k = static_cast<int>(mod_floor(k, r));
  const QExponent lift = exponent(r, 24);
  const WSeries theta = blowup_theta(r, k, cutoff + lift, false);
  RationalSeries num = theta.map_coefficients([](const WRational& c) { return c.evaluate(Rational(1)); });
  if (r == 2 && k == 1) num = -num;
  return require_through(num * eta_power(-r, cutoff), cutoff);
}

WSeries blowup_factor_refined(int r, int k, QExponent cutoff) {
  check_blowup_rank(r);
  require_finite(cutoff, "blow-up factor");
  k = static_cast<int>(mod_floor(k, r));
  const QExponent lift = exponent(r, 24);
  return require_through(blowup_theta(r, k, cutoff + lift, true) * to_wseries(eta_power(-r, cutoff)), cutoff);
}

}  // namespace sheafbetti
