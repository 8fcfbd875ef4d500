#pragma once

#include <vector>

#include "halo/rational.hpp"

namespace halo {

// Nonempty open interval (lo, hi) with exact rational endpoints.
struct Interval {
  Rational lo, hi;

  Interval(Rational l, Rational h);
  Rational length() const { return hi - lo; }

  friend bool operator==(const Interval& a, const Interval& b) {
    return a.lo == b.lo && a.hi == b.hi;
  }
};

// Canonical finite union of disjoint open intervals: sorted by lo, pairwise
// disjoint, non-adjacent (touching pieces merge since a shared endpoint has
// measure zero). The canonical form of a point set is unique, so operator==
// is set equality up to null sets.
class IntervalSet {
 public:
  IntervalSet() = default;
  static IntervalSet from_raw(std::vector<Interval> raw);

  const std::vector<Interval>& parts() const { return parts_; }
  bool empty() const { return parts_.empty(); }
  std::size_t count() const { return parts_.size(); }
  Rational measure() const;

  // strict: open membership (interior); otherwise closure membership.
  bool contains(const Rational& x, bool strict = true) const;

  // |*this ∩ (-inf, u)|, used for prefix-sum style average computations.
  Rational measure_below(const Rational& u) const;

  static IntervalSet set_union(const IntervalSet& a, const IntervalSet& b);
  static IntervalSet set_intersection(const IntervalSet& a, const IntervalSet& b);
  static IntervalSet set_difference(const IntervalSet& a, const IntervalSet& b);

  // x -> scale*x + shift with scale > 0 (homothecy); throws otherwise.
  IntervalSet scaled_translated(const Rational& scale, const Rational& shift) const;

  friend bool operator==(const IntervalSet& a, const IntervalSet& b) {
    return a.parts_ == b.parts_;
  }

 private:
  std::vector<Interval> parts_;
};

}  // namespace halo
