#include "halo/maximal_1d.hpp"

#include <algorithm>

namespace halo {

SuperlevelResult superlevel_indicator(const IntervalSet& E, const Rational& alpha) {
  if (E.empty()) throw std::domain_error("superlevel_indicator: empty set");
  if (!(Rational(0) < alpha && alpha < Rational(1)))
    throw std::domain_error("superlevel_indicator: alpha must lie in (0,1)");

  // Breakpoints of G are exactly the endpoints of E's components.
  std::vector<Rational> u;
  u.reserve(2 * E.count());
  for (const auto& iv : E.parts()) {
    u.push_back(iv.lo);
    u.push_back(iv.hi);
  }
  const std::size_t n = u.size();

  const Rational slope_in = Rational(1) - alpha;  // > 0
  std::vector<Rational> g(n);
  for (std::size_t i = 1; i < n; ++i) {
    const Rational len = u[i] - u[i - 1];
    // Even gaps [u_{2k}, u_{2k+1}] lie inside E, odd ones outside.
    g[i] = (i % 2 == 1) ? g[i - 1] + slope_in * len : g[i - 1] - alpha * len;
  }

  // G is linear between breakpoints, so running extremes over breakpoint
  // values equal the continuous running extremes.
  std::vector<Rational> pmin(n), smax(n);
  pmin[0] = g[0];
  for (std::size_t i = 1; i < n; ++i) pmin[i] = min(pmin[i - 1], g[i]);
  smax[n - 1] = g[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) smax[i] = max(smax[i + 1], g[i]);

  std::vector<Interval> pieces;

  // Left of u_0: G(x) = g[0] + alpha*(u_0 - x); in the set while G(x) < smax[0].
  if (smax[0] > g[0]) pieces.emplace_back(u[0] - (smax[0] - g[0]) / alpha, u[0]);

  for (std::size_t i = 0; i + 1 < n; ++i) {
    const Rational& a = u[i];
    const Rational& b = u[i + 1];
    if (i % 2 == 0) {
      // Inside E: envelopes are constant on the segment.
      if (smax[i + 1] > pmin[i]) pieces.emplace_back(a, b);
      continue;
    }
    // Gap: G decreases from g[i]. Left piece while G(x) > pmin[i], right
    // piece while G(x) < smax[i+1]; if smax[i+1] > pmin[i] the whole segment
    // qualifies.
    const Rational& p = pmin[i];
    const Rational& s = smax[i + 1];
    if (s > p) {
      pieces.emplace_back(a, b);
      continue;
    }
    if (g[i] > p) pieces.emplace_back(a, min(a + (g[i] - p) / alpha, b));
    if (g[i + 1] < s) pieces.emplace_back(max(a + (g[i] - s) / alpha, a), b);
  }

  // Right of u_{n-1}: G decreasing; in the set while G(x) > pmin[n-1].
  if (g[n - 1] > pmin[n - 1])
    pieces.emplace_back(u[n - 1], u[n - 1] + (g[n - 1] - pmin[n - 1]) / alpha);

  SuperlevelResult res;
  res.level = alpha;
  res.set = IntervalSet::from_raw(std::move(pieces));
  res.ratio = res.set.measure() / E.measure();
  return res;
}

SuperlevelResult superlevel_mixed(const MixedIndicator& f, const Rational& alpha) {
  if (f.floor.sign() < 0 || !(f.floor < Rational(1)))
    throw std::domain_error("superlevel_mixed: gamma must lie in [0,1)");
  if (!(alpha < Rational(1))) throw std::domain_error("superlevel_mixed: alpha must be < 1");
  if (!(f.floor < alpha))
    throw WholeLineError("superlevel_mixed: alpha <= gamma, superlevel set is all of R");

  // Averages of f over an interval I are gamma + (1-gamma)|E cap I|/|I|, so
  // the mixed superlevel is the indicator superlevel at the reduced level.
  const Rational reduced = (alpha - f.floor) / (Rational(1) - f.floor);
  SuperlevelResult res = superlevel_indicator(f.base, reduced);
  res.level = alpha;
  return res;
}

std::vector<Interval> bounded_overlap_select(std::vector<Interval> cover) {
  if (cover.empty()) return {};
  std::sort(cover.begin(), cover.end(), [](const Interval& a, const Interval& b) {
    return a.lo < b.lo || (a.lo == b.lo && b.hi < a.hi);
  });

  // Keep an interval only if it extends the reach; a dropped interval is
  // contained in the kept interval realizing the current reach. The sort
  // order makes kept strictly increasing in both endpoints.
  std::vector<Interval> kept;
  for (auto& iv : cover)
    if (kept.empty() || kept.back().hi < iv.hi) kept.push_back(iv);

  // Drop any interval contained in the union of its neighbors (the neighbors
  // overlap strictly, so their union is an interval). Iterate to fixpoint.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 1; i + 1 < kept.size(); ++i) {
      if (kept[i + 1].lo < kept[i - 1].hi) {
        kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  return kept;
}

Rational lemma1_bound(const Rational& alpha, const Rational& gamma) {
  if (gamma.sign() < 0 || !(gamma < alpha) || !(alpha < Rational(1)))
    throw std::domain_error("lemma1_bound: requires 0 <= gamma < alpha < 1");
  return Rational(1) + Rational(4) * (Rational(1) - alpha) / (alpha - gamma);
}

}  // namespace halo
