#pragma once

#include <stdexcept>
#include <vector>

#include "halo/interval_set.hpp"

namespace halo {

// f = chi_E + gamma * chi_{E^c} with 0 <= gamma < 1.
struct MixedIndicator {
  IntervalSet base;
  Rational floor;
};

struct SuperlevelResult {
  Rational level;   // alpha
  IntervalSet set;  // {M_HL f > alpha}, canonical (open up to null sets)
  Rational ratio;   // measure(set) / measure(base)
};

// Signals that the requested superlevel set is all of R (alpha <= gamma), so
// no finite representation exists.
class WholeLineError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Exact superlevel set {x : M_HL chi_E(x) > alpha} of the uncentered 1D
// Hardy-Littlewood maximal function, 0 < alpha < 1.
//
// x belongs to the set iff there are s <= x <= t with G(t) > G(s), where
// G(u) = |E cap (-inf,u]| - alpha*u is piecewise linear with slopes 1-alpha
// on E and -alpha off E. The sweep compares the running minimum of G from
// the left with the running maximum from the right on the breakpoint set and
// solves the strict crossings linearly, all in rational arithmetic.
SuperlevelResult superlevel_indicator(const IntervalSet& E, const Rational& alpha);

// {x : M_HL(chi_E + gamma chi_{E^c})(x) > alpha} for gamma < alpha < 1,
// computed through the exact reduction to superlevel_indicator with level
// (alpha-gamma)/(1-gamma). Throws WholeLineError when alpha <= gamma.
SuperlevelResult superlevel_mixed(const MixedIndicator& f, const Rational& alpha);

// Garnett-style bounded-overlap subfamily: returns intervals with the same
// union in which every point is covered at most twice. Greedy keep of
// intervals extending the reach, then repeated pruning of any interval
// contained in the union of its two neighbors.
std::vector<Interval> bounded_overlap_select(std::vector<Interval> cover);

// 1 + 4(1-alpha)/(alpha-gamma), the covering bound for the mixed superlevel,
// exact. Requires 0 <= gamma < alpha < 1.
Rational lemma1_bound(const Rational& alpha, const Rational& gamma);

}  // namespace halo
