#include "halo/interval_set.hpp"

#include <algorithm>
#include <stdexcept>

namespace halo {

Interval::Interval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
  if (!(lo < hi)) throw std::invalid_argument("Interval: requires lo < hi");
}

IntervalSet IntervalSet::from_raw(std::vector<Interval> raw) {
  std::sort(raw.begin(), raw.end(), [](const Interval& a, const Interval& b) {
    return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
  });
  IntervalSet out;
  for (auto& iv : raw) {
    if (!out.parts_.empty() && iv.lo <= out.parts_.back().hi) {
      if (out.parts_.back().hi < iv.hi) out.parts_.back().hi = iv.hi;
    } else {
      out.parts_.push_back(iv);
    }
  }
  return out;
}

Rational IntervalSet::measure() const {
  Rational m;
  for (const auto& iv : parts_) m += iv.length();
  return m;
}

bool IntervalSet::contains(const Rational& x, bool strict) const {
  auto it = std::upper_bound(parts_.begin(), parts_.end(), x,
                             [](const Rational& v, const Interval& iv) { return v < iv.lo; });
  if (it == parts_.begin()) return !strict && !parts_.empty() && x == parts_.front().lo;
  const Interval& iv = *(it - 1);
  if (strict) return iv.lo < x && x < iv.hi;
  return x <= iv.hi;
}

Rational IntervalSet::measure_below(const Rational& u) const {
  Rational m;
  for (const auto& iv : parts_) {
    if (iv.hi <= u) {
      m += iv.length();
    } else if (iv.lo < u) {
      m += u - iv.lo;
      break;
    } else {
      break;
    }
  }
  return m;
}

namespace {

// Sweep both endpoint lists and keep elementary gaps where keep(inA, inB)
// holds. Open/closed distinctions wash out: the canonical form merges pieces
// touching at a point.
template <typename Keep>
IntervalSet boolean_op(const IntervalSet& a, const IntervalSet& b, Keep keep) {
  std::vector<Rational> cuts;
  for (const auto& iv : a.parts()) {
    cuts.push_back(iv.lo);
    cuts.push_back(iv.hi);
  }
  for (const auto& iv : b.parts()) {
    cuts.push_back(iv.lo);
    cuts.push_back(iv.hi);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<Interval> kept;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    Rational mid = (cuts[i] + cuts[i + 1]) / Rational(2);
    if (keep(a.contains(mid), b.contains(mid))) kept.emplace_back(cuts[i], cuts[i + 1]);
  }
  return IntervalSet::from_raw(std::move(kept));
}

}  // namespace

IntervalSet IntervalSet::set_union(const IntervalSet& a, const IntervalSet& b) {
  return boolean_op(a, b, [](bool x, bool y) { return x || y; });
}

IntervalSet IntervalSet::set_intersection(const IntervalSet& a, const IntervalSet& b) {
  return boolean_op(a, b, [](bool x, bool y) { return x && y; });
}

IntervalSet IntervalSet::set_difference(const IntervalSet& a, const IntervalSet& b) {
  return boolean_op(a, b, [](bool x, bool y) { return x && !y; });
}

IntervalSet IntervalSet::scaled_translated(const Rational& scale, const Rational& shift) const {
  if (scale.sign() <= 0) throw std::domain_error("IntervalSet: scale must be positive");
  IntervalSet out;
  out.parts_.reserve(parts_.size());
  for (const auto& iv : parts_)
    out.parts_.emplace_back(scale * iv.lo + shift, scale * iv.hi + shift);
  return out;
}

}  // namespace halo
