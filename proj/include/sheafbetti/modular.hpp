#pragma once

#include <filesystem>
#include <memory>
#include <vector>

#include <json.hpp>

#include "sheafbetti/puiseux_series.hpp"

namespace sheafbetti {

/// Dedekind eta, q^{1/24} prod (1 - q^n), exact through `cutoff`.
RationalSeries eta(QExponent cutoff);
/// eta^k for any integer k, via the divisor-sum recurrence
///   n a_n = -k sum_{j=1}^n sigma(j) a_{n-j}.
RationalSeries eta_power(int k, QExponent cutoff);

/// -i theta_1(2z, tau) = sum_{r in Z+1/2} (-1)^{r-1/2} q^{r^2/2} w^{2r}.
WSeries theta1_tilde_2z(QExponent cutoff);
/// theta_2(2z, 2tau) = sum_{r in Z+1/2} q^{r^2} w^{2r}.
WSeries theta2_2z_2tau(QExponent cutoff);
/// theta_3(2z, 2tau) = sum_{n in Z} q^{n^2} w^{2n}.
WSeries theta3_2z_2tau(QExponent cutoff);

/// Hurwitz class number: weighted count of reduced positive definite forms
/// of discriminant -n. H(0) = -1/12. Throws std::invalid_argument for n < 0.
Rational hurwitz(long n);

/// H(0..bound), computed once. Read-only afterwards.
class HurwitzCache {
 public:
  explicit HurwitzCache(long bound);
  long bound() const { return static_cast<long>(values_.size()) - 1; }
  /// Throws std::out_of_range beyond the bound.
  const Rational& operator()(long n) const;

  nlohmann::json to_json() const;
  static HurwitzCache from_json(const nlohmann::json& j);
  /// Reads `dir`/hurwitz.json when it covers `bound`, otherwise computes
  /// and tries to write it back. An empty `dir` disables the file.
  static HurwitzCache load_or_build(const std::filesystem::path& dir, long bound);

 private:
  HurwitzCache() = default;
  std::vector<Rational> values_;
};

/// Table consulted by hclass_series before computing H(n) directly. Pass
/// nullptr to detach.
void use_hurwitz_cache(std::shared_ptr<const HurwitzCache> cache);

/// h_j = sum_{n>=0} H(4n+3j) q^{n+3j/4}, j in {0, 1}.
RationalSeries hclass_series(int j, QExponent cutoff);

// Appell-type sums. Each 1/(1 - q^{2n-1} w^4) is expanded in positive
// powers of q: geometric in q^{2n-1} w^4 for n >= 1, and
// -sum_{k>=1} q^{(1-2n)k} w^{-4k} for n <= 0.
WSeries g0(QExponent cutoff);
WSeries g1(QExponent cutoff);
/// The Appell sum inside g0 without the 1/2 and the theta prefactor.
WSeries g0_appell_sum(QExponent cutoff);
WSeries g1_appell_sum(QExponent cutoff);

/// Unrefined B_{2,k} = (-1)^k sum_{n in Z+k/2} q^{n^2} / eta^2 and
/// B_{3,k} = sum_{m,n in Z+k/3} q^{m^2+n^2+mn} / eta^3.
RationalSeries blowup_factor_unrefined(int r, int k, QExponent cutoff);
/// Refined: w^{2n} resp. w^{4m+2n} inserted, and no (-1)^k.
WSeries blowup_factor_refined(int r, int k, QExponent cutoff);

template <CoefficientField R>
PuiseuxSeries<R> blowup_factor(int r, int k, QExponent cutoff) {
  if constexpr (std::is_same_v<R, WRational>) {
    return blowup_factor_refined(r, k, cutoff);
  } else {
    return blowup_factor_unrefined(r, k, cutoff);
  }
}

/// Positive integer remainder.
inline long mod_floor(long a, long m) {
  const long r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace sheafbetti
