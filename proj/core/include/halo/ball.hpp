#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "halo/box_set.hpp"

namespace halo {

// Euclidean ball with binary floating point center and radius. Unlike the
// interval/box types, ball geometry is inherently irrational, so every
// derived volume carries an explicit error band instead of being exact.
struct Ball {
  std::vector<double> center;
  double radius = 0.0;

  Ball() = default;
  Ball(std::vector<double> c, double r);

  int dim() const { return static_cast<int>(center.size()); }
  double volume() const;
  bool contains(std::span<const double> p) const;
  Ball dilated(double factor) const;  // concentric dilate
};

// Volume of the unit-coefficient cap of height a (0 <= a <= 2r) cut from a
// ball of radius r by a hyperplane, n in {1,2,3}; values outside [0,2r] are
// clamped. 2D: circular segment r^2 acos((r-a)/r) - (r-a) sqrt(2ra - a^2);
// 3D: pi a^2 (3r-a)/3.
double cap_volume(int n, double r, double a);

// |B cap {lo < x_axis < hi}| in closed form: whole ball minus the two caps
// outside the slab, clamped to [0, |B|]. Requires lo < hi.
double ball_slab_volume(const Ball& b, double lo, double hi, int axis);

// Exact area of disk(center (cx,cy), radius r) cap box [x0,x1]x[y0,y1].
double disk_box_overlap_area(double cx, double cy, double x0, double x1, double y0, double y1,
                             double r);

// |ball cap region| for a BoxSet region; closed form in 2D, slab formula in
// 1D, and a seeded Monte Carlo fallback in 3D (deterministic given seed).
double ball_boxset_overlap(const Ball& b, const BoxSet& region, std::uint64_t seed = 0,
                           int mc_samples = 200000);

struct VolumeEstimate {
  double value = 0.0;
  double error = 0.0;  // reported band: 3-sigma binomial (MC) or boundary cells (raster)
};

struct McParams {
  std::uint64_t seed = 0;
  int samples = 100000;
};

struct RasterParams {
  double step = 0.0;
};

using Estimator = std::variant<McParams, RasterParams>;

// |B cap region| with a reported uncertainty; the result is a pure function
// of (geometry, estimator parameters). Throws on degenerate inputs.
VolumeEstimate region_ball_volume(const Ball& b, const BoxSet& region, const Estimator& est);
VolumeEstimate region_ball_volume(const Ball& b, std::span<const Ball> region,
                                  const Estimator& est);

}  // namespace halo
