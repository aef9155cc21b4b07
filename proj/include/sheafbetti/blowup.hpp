#pragma once

#include <string>
#include <vector>

#include "sheafbetti/modular.hpp"
#include "sheafbetti/wallcross.hpp"

namespace sheafbetti {

/// phi: ruled surface -> P^2 contracting C, phi^* H = C + f. A class
/// c~1 = phi^* c1 - kC on the ruled surface pairs with (c1, k).
struct BlowupMap {
  enum class Direction { ToP2, ToRuled };
  int r = 2;
  int k = 0;  // in [0, r)
  Direction direction = Direction::ToP2;
};

struct BlowupClass {
  DivisorClass p2_class;
  int k = 0;
};

/// xC + yf  ->  (yH, y - x mod r)
BlowupClass blowup_class(const DivisorClass& ruled_c1, int r);
/// cH, k  ->  (c - k)C + c f
DivisorClass ruled_class(const DivisorClass& p2_c1, int k);

/// h * B_{r,k}; exact through the largest cutoff the inputs allow.
template <CoefficientField R>
PuiseuxSeries<R> multiply_by_blowup(const PuiseuxSeries<R>& h, int r, int k);
/// h / B_{r,k}; same cutoff rule.
template <CoefficientField R>
PuiseuxSeries<R> divide_by_blowup(const PuiseuxSeries<R>& h, int r, int k);

/// Ruled-surface series (taken at J_{1,0}) to P^2. Adds a note when
/// gcd(r, c1.H) != 1, where the relation is only known case by case.
InvariantSeries to_p2(const InvariantSeries& ruled);
/// P^2 series to the ruled surface class phi^* c1 - kC at J_{1,0}.
InvariantSeries to_ruled(const InvariantSeries& p2, int k);

}  // namespace sheafbetti
