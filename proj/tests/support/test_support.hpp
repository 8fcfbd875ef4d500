#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "halo/ball.hpp"
#include "halo/box_set.hpp"
#include "halo/interval_set.hpp"
#include "halo/rational.hpp"
#include "halo/rng.hpp"

namespace halo::testing {

// Random canonical interval set with endpoints on the 1/denom lattice inside
// [0, range], at most max_parts components.
IntervalSet random_interval_set(SplitMix64& rng, int max_parts = 8, long denom = 64,
                                long range = 4);

// Random 2D box set with coordinates on the 1/denom lattice inside [0, range]^2.
BoxSet random_box_set_2d(SplitMix64& rng, int max_boxes = 4, long denom = 16, long range = 4);

// Rational with small numerator/denominator as machine integers; throws if
// the value does not fit.
std::pair<long, long> small_fraction(const Rational& r);

// Rejection-samples 2D balls whose exact density |B cap E|/|B| exceeds
// alpha + margin, so that Monte Carlo density validation cannot reject them.
std::vector<Ball> random_dense_balls(SplitMix64& rng, const BoxSet& E, double alpha, int count,
                                     double margin = 0.02);

// ---------------------------------------------------------------------------
// Brute-force grid oracle for 1D superlevel sets.
//
// Decides membership of every grid point x_j = j/inv_step in
//   { x : exists grid s <= x <= t with A*|E cap (s,t)| > B*(t-s) },
// i.e. the superlevel set of the mixed indicator restricted to candidate
// intervals with endpoints on the grid. Requires E's endpoints to lie on the
// grid; everything is evaluated in 64-bit integers, so the oracle is exact.
// The plain indicator at level p/q uses (A,B) = (q,p); the mixed indicator
// with floor a/b uses A = (b-a)q, B = pb - aq.
struct Oracle1DResult {
  long inv_step = 0;
  long j0 = 0;                // first grid index
  std::vector<char> member;   // membership per grid index j0..j0+member.size()-1
  long count = 0;             // points in the set
  long components = 0;        // maximal runs of member points
  double measure() const { return static_cast<double>(count) / inv_step; }
  // One oracle resolution: boundary slack of the grid measure.
  double resolution() const {
    return static_cast<double>(2 * components + 2) / inv_step;
  }
};

Oracle1DResult grid_superlevel_oracle(const IntervalSet& E, long A, long B, long inv_step);

// Literal O(pairs) evaluation of the same membership test at one grid point;
// used to spot-check the oracle's envelope shortcut on small inputs.
bool literal_grid_member(const IntervalSet& E, long A, long B, long inv_step, long j, long j0,
                         long j1);

// Exact value of the uncentered 1D maximal function of chi_F at x: the
// optimal interval endpoints lie among F's breakpoints and x itself, so a
// finite rational maximization is exact.
Rational exact_max1d(const IntervalSet& F, const Rational& x);

// Exact pointwise evaluation of M2(M1 chi_E) on a rational grid for 2D box
// sets: pass one computes exact per-slab maxima of the inner operator, pass
// two applies the outer operator to the resulting step function. Both passes
// are exact, so values are *the* iterated maximal function at the point.
class IteratedOracle2D {
 public:
  explicit IteratedOracle2D(const BoxSet& E);

  // Exact per-slab values of M1 chi_E(x, .), constant in y within a slab;
  // reusable across all y of one grid column.
  std::vector<Rational> inner_values(const Rational& x) const;
  std::vector<double> inner_values_f(double x) const;

  // Exact outer pass: M2 applied to the step function of inner values at y.
  Rational outer_value(const std::vector<Rational>& inner, const Rational& y) const;
  double outer_value_f(const std::vector<double>& inner, double y) const;

  // Exact M2(M1 chi_E)(x, y).
  Rational exact_value(const Rational& x, const Rational& y) const;
  // Double mirror of the same computation, used as a cheap screen before
  // exact evaluation (its error is far below the screening margin).
  double approx_value(double x, double y) const;

 private:
  struct Slab {
    Rational lo, hi;
    IntervalSet fiber;  // x-section of E for y in (lo, hi)
  };
  std::vector<Slab> slabs_;

  Rational inner_exact(const IntervalSet& fiber, const Rational& x) const;
};

// Containment audit for the majorant chain in 2D: evaluates the exact
// iterated maximal function on a grid_n x grid_n rational grid covering every
// point where it can possibly exceed `level`, and counts samples that exceed
// the level yet fall outside `majorant`. Zero escapes certify domination on
// the grid. `exceed` reports how many samples exceeded the level at all.
struct ChainAudit {
  long escapes = 0;
  long exceed = 0;
  long grid_points = 0;
};

ChainAudit audit_chain_containment(const BoxSet& E, const BoxSet& majorant, const Rational& level,
                                   int grid_n);

}  // namespace halo::testing
