#include "sheafbetti/oracles.hpp"

#include <cstdlib>
#include <stdexcept>

namespace sheafbetti::oracle {

namespace {

std::vector<Rational> multiply(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  std::vector<Rational> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; i + j < a.size() && j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

}  // namespace

std::vector<Rational> eta_product(int k, long terms) {
  std::vector<Rational> result(static_cast<std::size_t>(terms));
  if (terms == 0) return result;
  result[0] = Rational(1);
  for (long n = 1; n < terms; ++n) {
    std::vector<Rational> factor(static_cast<std::size_t>(terms));
    if (k >= 0) {
      factor[0] = Rational(1);
      factor[static_cast<std::size_t>(n)] = Rational(-1);
    } else {
      for (long j = 0; j < terms; j += n) factor[static_cast<std::size_t>(j)] = Rational(1);
    }
    for (int i = 0; i < std::abs(k); ++i) result = multiply(result, factor);
  }
  return result;
}

std::vector<Rational> pentagonal(long terms) {
  std::vector<Rational> out(static_cast<std::size_t>(terms));
  for (long j = -terms; j <= terms; ++j) {
    const long e = j * (3 * j - 1) / 2;
    if (e >= 0 && e < terms) out[static_cast<std::size_t>(e)] += Rational(j % 2 == 0 ? 1 : -1);
  }
  return out;
}

int kronecker(long a, long n) {
  if (n < 1) throw std::invalid_argument("kronecker symbol needs n >= 1");
  int result = 1;
  while (n % 2 == 0) {
    n /= 2;
    const long r = ((a % 8) + 8) % 8;
    if (r == 0 || r == 2 || r == 4 || r == 6) return 0;
    if (r == 3 || r == 5) result = -result;
  }
  // Jacobi symbol for odd n
  a = ((a % n) + n) % n;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      if (n % 8 == 3 || n % 8 == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

Rational hurwitz_analytic(long n) {
  if (n < 0) throw std::invalid_argument("negative argument");
  if (n == 0) return Rational(-1, 12);
  if (n % 4 == 1 || n % 4 == 2) return Rational(0);
  // n = m s^2, m squarefree
  long m = n;
  long s = 1;
  for (long p = 2; p * p <= m; ++p) {
    while (m % (p * p) == 0) {
      m /= p * p;
      s *= p;
    }
  }
  long d0 = 0;
  long conductor = 0;
  if ((-m % 4 + 4) % 4 == 1) {
    d0 = -m;
    conductor = s;
  } else {
    d0 = -4 * m;
    conductor = s / 2;
  }
  Rational sum;
  for (long a = 1; a <= -d0; ++a) sum += Rational(kronecker(d0, a) * a);
  const Rational hw = -sum / Rational(-d0);
  Rational total;
  for (long g = 1; g <= conductor; ++g) {
    if (conductor % g != 0) continue;
    Rational term = hw * Rational(g);
    long rest = g;
    for (long p = 2; p <= rest; ++p) {
      if (rest % p != 0) continue;
      while (rest % p == 0) rest /= p;
      term *= Rational(1) - Rational(kronecker(d0, p), p);
    }
    total += term;
  }
  return total;
}

std::map<std::pair<long, int>, Rational> theta1_triple_product(long q_terms) {
  // dense in q, sparse in w
  using Poly = std::vector<std::map<int, Rational>>;
  auto mul = [q_terms](const Poly& a, const Poly& b) {
    Poly out(static_cast<std::size_t>(q_terms));
    for (long i = 0; i < q_terms; ++i) {
      for (const auto& [e1, c1] : a[static_cast<std::size_t>(i)]) {
        for (long j = 0; i + j < q_terms; ++j) {
          for (const auto& [e2, c2] : b[static_cast<std::size_t>(j)]) out[static_cast<std::size_t>(i + j)][e1 + e2] += c1 * c2;
        }
      }
    }
    return out;
  };
  Poly acc(static_cast<std::size_t>(q_terms));
  acc[0][1] = Rational(1);
  acc[0][-1] = Rational(-1);
  for (long n = 1; n < q_terms; ++n) {
    for (int e : {0, 2, -2}) {
      Poly f(static_cast<std::size_t>(q_terms));
      f[0][0] = Rational(1);
      f[static_cast<std::size_t>(n)][e] = Rational(-1);
      acc = mul(acc, f);
    }
  }
  std::map<std::pair<long, int>, Rational> out;
  for (long i = 0; i < q_terms; ++i) {
    for (const auto& [e, c] : acc[static_cast<std::size_t>(i)]) {
      if (!c.is_zero()) out[{i, e}] = c;
    }
  }
  return out;
}

std::map<long, Rational> wall_sum_box(SumKind kind, int beta, int alpha, long m, long n, long bound_lattice,
                                      long box) {
  auto sign = [](long x) { return (x > 0) - (x < 0); };
  std::map<long, Rational> out;
  for (long a = -box; a <= box; ++a) {
    for (long b = -box; b <= box; ++b) {
      long u = 0;
      long v = 0;
      long ref = 0;
      Rational shift;
      switch (kind) {
        case SumKind::Boundary2:
          u = 2 * b + 1;
          v = 2 * a - alpha;
          ref = sign(u);
          shift = Rational(u * u, 4) + Rational(u * v, 2);
          break;
        case SumKind::Delta2:
          u = 2 * b - beta;
          v = 2 * a - alpha;
          ref = sign(-v);
          shift = Rational(u * u, 4) + Rational(u * v, 2);
          break;
        case SumKind::Boundary3:
          u = 3 * b + 2;
          v = 3 * a - 2;
          ref = sign(u);
          shift = Rational(u * u, 12) + Rational(u * v, 6);
          break;
      }
      const long twice = sign(u * n - v * m) - ref;
      if (twice == 0) continue;
      const long k = -u + 2 * v;
      const Rational lat = shift * Rational(kLatticeDen);
      if (lat > Rational(bound_lattice)) continue;
      out[lat.to_long()] += Rational(twice, 2) * Rational((k % 2 == 0) ? k : -k);
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

}  // namespace sheafbetti::oracle
