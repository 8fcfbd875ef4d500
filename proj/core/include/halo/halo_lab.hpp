#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "halo/ball.hpp"
#include "halo/box_set.hpp"

namespace halo {

enum class FamilyKind {
  Intervals1D,         // uncentered intervals on R
  UncenteredBalls,
  UncenteredCubes,
  CenteredBalls,
  CenteredCubes,
  AxisRectangles,      // strong maximal operator
  IteratedDirectional  // M_1...M_n; rectangle averages give valid lower bounds
};

struct OperatorFamily {
  FamilyKind kind;
  int dim;

  OperatorFamily(FamilyKind k, int n);  // validates kind/dimension compatibility
  std::string name() const;             // e.g. "balls2d"
  static OperatorFamily parse(const std::string& name);
};

// Generator of the finite candidate subfamily a sampled ratio maximizes over.
struct CandidateSpec {
  double window_pad = 1.0;    // margin around E's bounding box
  int ladder_sizes = 6;       // geometric size ladder depth
  double size_max = 0.0;      // largest candidate extent; 0 = auto from E
  int offsets_per_axis = 2;   // candidate lattice step = size / offsets_per_axis
  double lattice_1d = 0.0;    // 1D endpoint lattice; 0 = 8 * grid step
};

struct SweepRecord {
  double alpha = 0.0;
  double lower_ratio = 0.0;
  std::optional<double> upper_bound;
  std::string family;
  std::string set_desc;
  double grid_step = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t candidates = 0;
};

// Per-cell field of the best witnessed candidate density. A cell's value v
// certifies that the cell lies wholly inside a candidate of density v, so
// for any alpha < v every point of the cell belongs to the superlevel set;
// counting such cells therefore yields a valid lower bound of its measure.
// (Centered kinds evaluate candidates at the cell center instead; that is a
// pointwise sample, not a containment certificate.)
class CandidateField {
 public:
  static CandidateField build(const OperatorFamily& family, const BoxSet& E, double grid_step,
                              const CandidateSpec& spec, std::uint64_t seed);

  // measure{best > alpha}/|E|; at alpha >= 1 the comparison becomes
  // best >= 1, witnessing the level set {M chi_E = 1} instead.
  double lower_ratio(double alpha) const;

  std::uint64_t candidate_count() const { return candidates_; }
  double grid_step() const { return grid_; }

 private:
  int n_ = 0;
  double grid_ = 0.0;
  double wlo_[3] = {0, 0, 0};
  long cells_[3] = {1, 1, 1};
  std::vector<double> best_;
  double set_measure_ = 0.0;
  std::uint64_t candidates_ = 0;
};

// Sampled lower bound of |{M chi_E > alpha}|/|E| over the finite candidate
// family; metadata (grid, spec-derived candidate count, seed) makes the
// record reproducible bit for bit.
SweepRecord sampled_superlevel_ratio(const OperatorFamily& family, const BoxSet& E, double alpha,
                                     double grid_step, const CandidateSpec& spec,
                                     std::uint64_t seed = 0);

enum class BoundSource { None, Auto };

struct SweepOptions {
  double grid_step = 1.0 / 256.0;
  CandidateSpec spec;
  std::uint64_t seed = 0;
  BoundSource bounds = BoundSource::Auto;
  bool force_sampled = false;  // 1D defaults to the exact engine; set to sample instead
};

// One record per alpha (strictly increasing, in (0,1)). For 1D interval
// families the exact superlevel engine supplies the ratio; other families
// share one candidate field across all levels, which makes the recorded
// ratios exactly nonincreasing in alpha.
std::vector<SweepRecord> alpha_sweep(const OperatorFamily& family, const BoxSet& E,
                                     const std::vector<double>& alphas,
                                     const SweepOptions& opts = {});

struct ExponentFit {
  std::vector<std::pair<double, double>> points;  // (alpha, value) actually used
  double slope = 0.0;
  double intercept = 0.0;
  double max_residual = 0.0;
  int dropped = 0;  // points with value <= 1, unusable in log coordinates
};

// Ordinary least squares of log(value - 1) against log(1/alpha - 1).
// Requires at least 5 usable points; throws std::domain_error otherwise.
ExponentFit fit_exponent(const std::vector<std::pair<double, double>>& alpha_value);

// Sampled (alpha, ratio) pairs along a ladder increasing to 1, for the
// one-sided probe of the level-one set: the excess (ratio-1)|E| must be
// nonincreasing and end near zero. Requires a homothecy invariant convex
// family (intervals/balls/cubes/rectangles).
std::vector<std::pair<double, double>> theorem4_probe(const OperatorFamily& family,
                                                      const BoxSet& E,
                                                      const std::vector<double>& alphas,
                                                      double grid_step,
                                                      const CandidateSpec& spec = {},
                                                      std::uint64_t seed = 0);

enum class SlabShape { Ball, CubePi4 };

struct SlabOptimum {
  double height = 0.0;  // best protrusion h above the slab face
  double scale = 0.0;   // ball radius / cube side realizing it
  double offset = 0.0;  // center height (ball) / top-vertex height (cube)
};

// Example slab E = [-100,100]^{n-1} x [-1,1]: the largest protrusion h of a
// convex body of the given shape keeping an alpha fraction of its volume
// inside the slab. Grid scan over log-spaced scales with golden-section
// refinement; both slab faces are accounted through the exact cap volumes.
// Throws std::runtime_error (with iteration trace) on non-convergence.
SlabOptimum slab_halo_optimum(SlabShape shape, int n, double alpha);
double slab_halo_height(SlabShape shape, int n, double alpha);

// "1-2^-4..1-2^-12" => {1-2^-4, ..., 1-2^-12}; also accepts a comma list of
// decimals or p/q rationals. Result is strictly increasing.
std::vector<double> parse_alpha_ladder(const std::string& text);

}  // namespace halo
