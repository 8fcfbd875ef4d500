#include "halo/box_set.hpp"

#include <algorithm>
#include <stdexcept>

namespace halo {

Rational Box::volume() const {
  Rational v(1);
  for (const auto& iv : axes) v *= iv.length();
  return v;
}

bool Box::contains(std::span<const Rational> p, bool strict) const {
  if (p.size() != axes.size()) throw std::invalid_argument("Box: point dimension mismatch");
  for (std::size_t i = 0; i < axes.size(); ++i) {
    if (strict ? !(axes[i].lo < p[i] && p[i] < axes[i].hi)
               : !(axes[i].lo <= p[i] && p[i] <= axes[i].hi))
      return false;
  }
  return true;
}

namespace {

Box tail_of(const Box& b) {
  Box t;
  t.axes.assign(b.axes.begin() + 1, b.axes.end());
  return t;
}

// Recursive slab decomposition by distinct cross-section; see box_set.hpp.
std::vector<Box> canonical_boxes(int d, const std::vector<Box>& raw) {
  if (raw.empty()) return {};
  if (d == 1) {
    std::vector<Interval> ivs;
    ivs.reserve(raw.size());
    for (const auto& b : raw) ivs.push_back(b.axes[0]);
    const IntervalSet merged = IntervalSet::from_raw(std::move(ivs));
    std::vector<Box> out;
    for (const auto& iv : merged.parts()) out.push_back(Box{{iv}});
    return out;
  }

  std::vector<Rational> cuts;
  cuts.reserve(2 * raw.size());
  for (const auto& b : raw) {
    cuts.push_back(b.axes[0].lo);
    cuts.push_back(b.axes[0].hi);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  struct Slab {
    Interval span;
    std::vector<Box> cross;
  };
  std::vector<Slab> slabs;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    std::vector<Box> tails;
    for (const auto& b : raw)
      if (b.axes[0].lo <= cuts[i] && cuts[i + 1] <= b.axes[0].hi) tails.push_back(tail_of(b));
    if (tails.empty()) continue;
    std::vector<Box> cross = canonical_boxes(d - 1, tails);
    if (!slabs.empty() && slabs.back().span.hi == cuts[i] && slabs.back().cross == cross) {
      slabs.back().span.hi = cuts[i + 1];
    } else {
      slabs.push_back(Slab{Interval(cuts[i], cuts[i + 1]), std::move(cross)});
    }
  }

  std::vector<Box> out;
  for (const auto& s : slabs) {
    for (const auto& c : s.cross) {
      Box b;
      b.axes.reserve(d);
      b.axes.push_back(s.span);
      b.axes.insert(b.axes.end(), c.axes.begin(), c.axes.end());
      out.push_back(std::move(b));
    }
  }
  return out;
}

}  // namespace

BoxSet BoxSet::from_raw(int dim, std::vector<Box> raw) {
  if (dim < 1 || dim > 3) throw std::invalid_argument("BoxSet: dimension must be 1..3");
  for (const auto& b : raw)
    if (b.dim() != dim) throw std::invalid_argument("BoxSet: box dimension mismatch");
  BoxSet out(dim);
  out.boxes_ = canonical_boxes(dim, raw);
  return out;
}

Rational BoxSet::measure() const {
  Rational m;
  for (const auto& b : boxes_) m += b.volume();
  return m;
}

bool BoxSet::contains(std::span<const Rational> p, bool strict) const {
  for (const auto& b : boxes_)
    if (b.contains(p, strict)) return true;
  return false;
}

Box BoxSet::bounding_box() const {
  if (boxes_.empty()) throw std::domain_error("BoxSet: bounding box of empty set");
  Box bb = boxes_.front();
  for (const auto& b : boxes_) {
    for (int i = 0; i < dim_; ++i) {
      bb.axes[i].lo = min(bb.axes[i].lo, b.axes[i].lo);
      bb.axes[i].hi = max(bb.axes[i].hi, b.axes[i].hi);
    }
  }
  return bb;
}

BoxSet BoxSet::scaled_translated(const Rational& scale, std::span<const Rational> shift) const {
  if (scale.sign() <= 0) throw std::domain_error("BoxSet: scale must be positive");
  if (static_cast<int>(shift.size()) != dim_)
    throw std::invalid_argument("BoxSet: shift dimension mismatch");
  BoxSet out(dim_);
  out.boxes_.reserve(boxes_.size());
  for (const auto& b : boxes_) {
    Box nb;
    nb.axes.reserve(dim_);
    for (int i = 0; i < dim_; ++i)
      nb.axes.emplace_back(scale * b.axes[i].lo + shift[i], scale * b.axes[i].hi + shift[i]);
    out.boxes_.push_back(std::move(nb));
  }
  return out;
}

namespace {

// Merges touching cells that agree on every other axis and carry the same
// fiber. One pass per axis is enough after sorting.
void merge_cells_along(std::vector<FiberCell>& cells, int axis) {
  auto key_less = [axis](const FiberCell& a, const FiberCell& b) {
    int d = a.cell.dim();
    for (int i = 0; i < d; ++i) {
      if (i == axis) continue;
      if (a.cell.axes[i].lo != b.cell.axes[i].lo) return a.cell.axes[i].lo < b.cell.axes[i].lo;
      if (a.cell.axes[i].hi != b.cell.axes[i].hi) return a.cell.axes[i].hi < b.cell.axes[i].hi;
    }
    return a.cell.axes[axis].lo < b.cell.axes[axis].lo;
  };
  std::sort(cells.begin(), cells.end(), key_less);
  std::vector<FiberCell> merged;
  for (auto& c : cells) {
    bool joined = false;
    if (!merged.empty()) {
      FiberCell& p = merged.back();
      bool same_others = true;
      for (int i = 0; i < c.cell.dim(); ++i) {
        if (i == axis) continue;
        if (!(p.cell.axes[i] == c.cell.axes[i])) same_others = false;
      }
      if (same_others && p.cell.axes[axis].hi == c.cell.axes[axis].lo && p.fiber == c.fiber) {
        p.cell.axes[axis].hi = c.cell.axes[axis].hi;
        joined = true;
      }
    }
    if (!joined) merged.push_back(std::move(c));
  }
  cells = std::move(merged);
}

}  // namespace

std::vector<FiberCell> fiber_decompose(const BoxSet& s, int axis) {
  const int n = s.dim();
  if (axis < 0 || axis >= n) throw std::out_of_range("fiber_decompose: axis out of range");
  if (s.empty()) return {};

  if (n == 1) {
    std::vector<Interval> ivs;
    for (const auto& b : s.boxes()) ivs.push_back(b.axes[0]);
    return {FiberCell{Box{}, IntervalSet::from_raw(std::move(ivs))}};
  }

  std::vector<int> comp;
  for (int i = 0; i < n; ++i)
    if (i != axis) comp.push_back(i);

  std::vector<std::vector<Rational>> cuts(comp.size());
  for (std::size_t k = 0; k < comp.size(); ++k) {
    for (const auto& b : s.boxes()) {
      cuts[k].push_back(b.axes[comp[k]].lo);
      cuts[k].push_back(b.axes[comp[k]].hi);
    }
    std::sort(cuts[k].begin(), cuts[k].end());
    cuts[k].erase(std::unique(cuts[k].begin(), cuts[k].end()), cuts[k].end());
  }

  std::vector<FiberCell> cells;
  std::vector<std::size_t> idx(comp.size(), 0);
  auto emit = [&](const std::vector<Interval>& cell_axes) {
    std::vector<Interval> fib;
    for (const auto& b : s.boxes()) {
      bool covers = true;
      for (std::size_t k = 0; k < comp.size(); ++k) {
        const Interval& have = b.axes[comp[k]];
        if (!(have.lo <= cell_axes[k].lo && cell_axes[k].hi <= have.hi)) {
          covers = false;
          break;
        }
      }
      if (covers) fib.push_back(b.axes[axis]);
    }
    if (fib.empty()) return;
    cells.push_back(FiberCell{Box{cell_axes}, IntervalSet::from_raw(std::move(fib))});
  };

  if (comp.size() == 1) {
    for (std::size_t i = 0; i + 1 < cuts[0].size(); ++i)
      emit({Interval(cuts[0][i], cuts[0][i + 1])});
    merge_cells_along(cells, 0);
  } else {
    for (std::size_t i = 0; i + 1 < cuts[0].size(); ++i)
      for (std::size_t j = 0; j + 1 < cuts[1].size(); ++j)
        emit({Interval(cuts[0][i], cuts[0][i + 1]), Interval(cuts[1][j], cuts[1][j + 1])});
    merge_cells_along(cells, 1);
    merge_cells_along(cells, 0);
  }
  return cells;
}

BoxSet assemble_fibers(int dim, int axis, const std::vector<FiberCell>& cells) {
  std::vector<Box> raw;
  for (const auto& fc : cells) {
    for (const auto& iv : fc.fiber.parts()) {
      Box b;
      b.axes.reserve(dim);
      b.axes.insert(b.axes.end(), fc.cell.axes.begin(), fc.cell.axes.begin() + axis);
      b.axes.push_back(iv);
      b.axes.insert(b.axes.end(), fc.cell.axes.begin() + axis, fc.cell.axes.end());
      raw.push_back(std::move(b));
    }
  }
  return BoxSet::from_raw(dim, std::move(raw));
}

}  // namespace halo
