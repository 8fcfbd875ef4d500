#pragma once

#include <span>
#include <vector>

#include "halo/interval_set.hpp"

namespace halo {

// Open axis-parallel box with exact rational coordinates. dim() may be 0 (the
// degenerate cross-section of a 1D set), in which case the volume is 1.
struct Box {
  std::vector<Interval> axes;

  int dim() const { return static_cast<int>(axes.size()); }
  Rational volume() const;
  bool contains(std::span<const Rational> p, bool strict = true) const;

  friend bool operator==(const Box& a, const Box& b) { return a.axes == b.axes; }
};

// Finite union of open boxes in dimension n, kept in a canonical form: the
// recursive slab decomposition by distinct cross-section. Along axis 0 the
// set is cut at exactly the coordinates where the (n-1)-dimensional
// cross-section changes, and each cross-section is canonical recursively.
// The form depends only on the point set (up to null sets), so it is unique,
// permutation-invariant, and supports exact equality.
class BoxSet {
 public:
  BoxSet() : dim_(0) {}
  explicit BoxSet(int dim) : dim_(dim) {}

  // Canonicalizes an arbitrary (possibly overlapping) list of boxes.
  // Throws std::invalid_argument on dimension mismatch or dim outside 1..3.
  static BoxSet from_raw(int dim, std::vector<Box> raw);

  int dim() const { return dim_; }
  const std::vector<Box>& boxes() const { return boxes_; }
  bool empty() const { return boxes_.empty(); }
  Rational measure() const;
  bool contains(std::span<const Rational> p, bool strict = true) const;
  Box bounding_box() const;  // throws std::domain_error when empty

  // x_i -> scale*x_i + shift[i], scale > 0.
  BoxSet scaled_translated(const Rational& scale, std::span<const Rational> shift) const;

  friend bool operator==(const BoxSet& a, const BoxSet& b) {
    return a.dim_ == b.dim_ && a.boxes_ == b.boxes_;
  }

 private:
  int dim_;
  std::vector<Box> boxes_;
};

// One cell of a fiber decomposition: over every point of `cell` (a box in the
// complementary axes) the section of the set along the decomposed axis equals
// `fiber`.
struct FiberCell {
  Box cell;
  IntervalSet fiber;
};

// Splits S along `axis` (0-based) into finitely many cells with constant
// fiber. Cells are pairwise disjoint, cover the projection of S, and carry
// nonempty fibers; reassembling cell x fiber reproduces S exactly.
// Throws std::out_of_range for a bad axis.
std::vector<FiberCell> fiber_decompose(const BoxSet& s, int axis);

// Inverse of fiber_decompose: extrudes per-cell interval sets back into a
// canonical BoxSet with `axis` re-inserted.
BoxSet assemble_fibers(int dim, int axis, const std::vector<FiberCell>& cells);

}  // namespace halo
