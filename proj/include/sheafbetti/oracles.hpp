#pragma once

#include <map>
#include <utility>
#include <vector>

#include "sheafbetti/rational.hpp"
#include "sheafbetti/wallcross.hpp"

// Reference computations that share no code path with the library
// generators. Used by the test suites and the acceptance checks.
namespace sheafbetti::oracle {

/// Coefficients of prod_{n>=1} (1 - q^n)^k for q^0 .. q^{terms-1}, by
/// repeated dense multiplication (geometric series for k < 0).
std::vector<Rational> eta_product(int k, long terms);

/// Coefficients of prod (1 - q^n) from the pentagonal number theorem.
std::vector<Rational> pentagonal(long terms);

/// Kronecker symbol (a/n) for n >= 1.
int kronecker(long a, long n);

/// H(n) from the analytic class number formula: -n = d0 F^2 with d0
/// fundamental, H(n) = sum_{g | F} h_w(d0) g prod_{p | g} (1 - (d0/p)/p) and
/// h_w(d0) = -(1/|d0|) sum_{a=1}^{|d0|} (d0/a) a.
Rational hurwitz_analytic(long n);

/// Coefficient of q^{1/8 + n} w^e in -i theta_1(2z, tau) from the triple
/// product q^{1/8}(w - w^-1) prod (1 - q^n)(1 - q^n w^2)(1 - q^n w^-2).
/// Keys (n, e) for n < q_terms.
std::map<std::pair<long, int>, Rational> theta1_triple_product(long q_terms);

/// Unrefined lattice sum of a wall-crossing formula over the full box
/// |a|, |b| <= box with no region pruning; keys are lattice numerators of
/// exponents <= bound_lattice.
std::map<long, Rational> wall_sum_box(SumKind kind, int beta, int alpha, long m, long n, long bound_lattice,
                                      long box);

}  // namespace sheafbetti::oracle
