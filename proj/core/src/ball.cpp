#include "halo/ball.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "halo/rng.hpp"

namespace halo {

Ball::Ball(std::vector<double> c, double r) : center(std::move(c)), radius(r) {
  if (!(radius > 0.0)) throw std::domain_error("Ball: radius must be positive");
  if (center.empty() || center.size() > 3)
    throw std::invalid_argument("Ball: dimension must be 1..3");
}

double Ball::volume() const {
  switch (dim()) {
    case 1: return 2.0 * radius;
    case 2: return std::numbers::pi * radius * radius;
    default: return 4.0 / 3.0 * std::numbers::pi * radius * radius * radius;
  }
}

bool Ball::contains(std::span<const double> p) const {
  double d2 = 0.0;
  for (int i = 0; i < dim(); ++i) {
    const double d = p[i] - center[i];
    d2 += d * d;
  }
  return d2 < radius * radius;
}

Ball Ball::dilated(double factor) const { return Ball(center, radius * factor); }

double cap_volume(int n, double r, double a) {
  if (!(r > 0.0)) throw std::domain_error("cap_volume: radius must be positive");
  a = std::clamp(a, 0.0, 2.0 * r);
  switch (n) {
    case 1: return a;
    case 2: return r * r * std::acos(std::clamp((r - a) / r, -1.0, 1.0)) -
                   (r - a) * std::sqrt(std::max(0.0, 2.0 * r * a - a * a));
    case 3: return std::numbers::pi * a * a * (3.0 * r - a) / 3.0;
    default: throw std::domain_error("cap_volume: dimension must be 1..3");
  }
}

double ball_slab_volume(const Ball& b, double lo, double hi, int axis) {
  if (!(lo < hi)) throw std::domain_error("ball_slab_volume: requires lo < hi");
  if (axis < 0 || axis >= b.dim()) throw std::out_of_range("ball_slab_volume: axis");
  const double c = b.center[static_cast<std::size_t>(axis)];
  const double r = b.radius;
  const double cap_above = cap_volume(b.dim(), r, std::clamp(c + r - hi, 0.0, 2.0 * r));
  const double cap_below = cap_volume(b.dim(), r, std::clamp(lo - (c - r), 0.0, 2.0 * r));
  return std::clamp(b.volume() - cap_above - cap_below, 0.0, b.volume());
}

namespace {

// Integral formulation of the disk/box overlap: area above the chord y = h
// restricted to x in [x0, x1], circle centered at the origin.
double circle_section(double h, double r) {
  return h < r ? std::sqrt(std::max(0.0, r * r - h * h)) : 0.0;
}

double segment_antideriv(double x, double h, double r) {
  const double root = std::sqrt(std::max(0.0, r * r - x * x));
  return 0.5 * (x * root + r * r * std::asin(std::clamp(x / r, -1.0, 1.0))) - h * x;
}

double area_above(double x0, double x1, double h, double r) {
  const double s = circle_section(h, r);
  const double a = std::clamp(x0, -s, s);
  const double b = std::clamp(x1, -s, s);
  return segment_antideriv(b, h, r) - segment_antideriv(a, h, r);
}

double area_signed(double x0, double x1, double y0, double y1, double r) {
  if (y0 < 0.0) {
    if (y1 <= 0.0) return area_signed(x0, x1, -y1, -y0, r);
    return area_signed(x0, x1, 0.0, -y0, r) + area_signed(x0, x1, 0.0, y1, r);
  }
  return area_above(x0, x1, y0, r) - area_above(x0, x1, y1, r);
}

}  // namespace

double disk_box_overlap_area(double cx, double cy, double x0, double x1, double y0, double y1,
                             double r) {
  if (!(r > 0.0)) throw std::domain_error("disk_box_overlap_area: radius must be positive");
  return std::max(0.0, area_signed(x0 - cx, x1 - cx, y0 - cy, y1 - cy, r));
}

namespace {

struct FloatBox {
  double lo[3], hi[3];
};

std::vector<FloatBox> to_float_boxes(const BoxSet& s) {
  std::vector<FloatBox> out;
  out.reserve(s.boxes().size());
  for (const auto& b : s.boxes()) {
    FloatBox fb{};
    for (int i = 0; i < s.dim(); ++i) {
      fb.lo[i] = b.axes[i].lo.to_double();
      fb.hi[i] = b.axes[i].hi.to_double();
    }
    out.push_back(fb);
  }
  return out;
}

bool in_float_boxes(std::span<const FloatBox> boxes, int n, const double* p) {
  for (const auto& fb : boxes) {
    bool in = true;
    for (int i = 0; i < n; ++i)
      if (!(fb.lo[i] <= p[i] && p[i] <= fb.hi[i])) {
        in = false;
        break;
      }
    if (in) return true;
  }
  return false;
}

template <typename InRegion, typename NearRegionBoundary>
VolumeEstimate estimate_ball_region(const Ball& b, const Estimator& est, InRegion in_region,
                                    NearRegionBoundary near_boundary) {
  const int n = b.dim();
  if (const auto* mc = std::get_if<McParams>(&est)) {
    if (mc->samples <= 0) throw std::domain_error("region_ball_volume: samples must be positive");
    SplitMix64 rng(mix_seed(mc->seed, 0));
    long hits = 0;
    double p[3];
    // Rejection sampling from the bounding cube yields uniform ball samples.
    for (int accepted = 0; accepted < mc->samples;) {
      for (int i = 0; i < n; ++i)
        p[i] = rng.next_in(b.center[static_cast<std::size_t>(i)] - b.radius,
                           b.center[static_cast<std::size_t>(i)] + b.radius);
      if (!b.contains({p, static_cast<std::size_t>(n)})) continue;
      ++accepted;
      if (in_region(p)) ++hits;
    }
    const double frac = static_cast<double>(hits) / mc->samples;
    const double sigma = std::sqrt(std::max(frac * (1.0 - frac), 1.0 / mc->samples) /
                                   mc->samples);
    return VolumeEstimate{b.volume() * frac, 3.0 * b.volume() * sigma};
  }

  const auto& ras = std::get<RasterParams>(est);
  if (!(ras.step > 0.0)) throw std::domain_error("region_ball_volume: raster step positive");
  const double h = ras.step;
  const double band = 0.5 * h * std::sqrt(static_cast<double>(n)) * 1.0000001;
  long counts[3] = {1, 1, 1};
  for (int i = 0; i < n; ++i)
    counts[i] = static_cast<long>(std::ceil(2.0 * b.radius / h)) + 1;
  double cellvol = 1.0;
  for (int i = 0; i < n; ++i) cellvol *= h;

  long inside = 0, boundary = 0;
  double p[3];
  for (long ix = 0; ix < counts[0]; ++ix) {
    p[0] = b.center[0] - b.radius + (ix + 0.5) * h;
    for (long iy = 0; iy < (n > 1 ? counts[1] : 1); ++iy) {
      if (n > 1) p[1] = b.center[1] - b.radius + (iy + 0.5) * h;
      for (long iz = 0; iz < (n > 2 ? counts[2] : 1); ++iz) {
        if (n > 2) p[2] = b.center[2] - b.radius + (iz + 0.5) * h;
        double d2 = 0.0;
        for (int i = 0; i < n; ++i) {
          const double d = p[i] - b.center[i];
          d2 += d * d;
        }
        const double dist = std::sqrt(d2);
        if (dist >= b.radius + band) continue;
        const bool in_ball = dist < b.radius;
        const bool near_ball = std::abs(dist - b.radius) <= band;
        if (in_ball && in_region(p)) ++inside;
        if (near_ball || near_boundary(p, band)) ++boundary;
      }
    }
  }
  return VolumeEstimate{static_cast<double>(inside) * cellvol,
                        static_cast<double>(boundary) * cellvol};
}

}  // namespace

VolumeEstimate region_ball_volume(const Ball& b, const BoxSet& region, const Estimator& est) {
  if (region.dim() != 0 && region.dim() != b.dim())
    throw std::invalid_argument("region_ball_volume: dimension mismatch");
  const auto boxes = to_float_boxes(region);
  const int n = b.dim();
  auto in_region = [&](const double* p) { return in_float_boxes(boxes, n, p); };
  auto near_boundary = [&](const double* p, double band) {
    for (const auto& fb : boxes)
      for (int i = 0; i < n; ++i) {
        if (std::abs(p[i] - fb.lo[i]) <= band || std::abs(p[i] - fb.hi[i]) <= band) {
          bool others = true;
          for (int j = 0; j < n; ++j)
            if (j != i && !(fb.lo[j] - band <= p[j] && p[j] <= fb.hi[j] + band)) others = false;
          if (others) return true;
        }
      }
    return false;
  };
  return estimate_ball_region(b, est, in_region, near_boundary);
}

VolumeEstimate region_ball_volume(const Ball& b, std::span<const Ball> region,
                                  const Estimator& est) {
  const int n = b.dim();
  for (const auto& o : region)
    if (o.dim() != n) throw std::invalid_argument("region_ball_volume: dimension mismatch");
  auto in_region = [&](const double* p) {
    for (const auto& o : region)
      if (o.contains({p, static_cast<std::size_t>(n)})) return true;
    return false;
  };
  auto near_boundary = [&](const double* p, double band) {
    for (const auto& o : region) {
      double d2 = 0.0;
      for (int i = 0; i < n; ++i) {
        const double d = p[i] - o.center[i];
        d2 += d * d;
      }
      if (std::abs(std::sqrt(d2) - o.radius) <= band) return true;
    }
    return false;
  };
  return estimate_ball_region(b, est, in_region, near_boundary);
}

double ball_boxset_overlap(const Ball& b, const BoxSet& region, std::uint64_t seed,
                           int mc_samples) {
  if (region.empty()) return 0.0;
  if (region.dim() != b.dim())
    throw std::invalid_argument("ball_boxset_overlap: dimension mismatch");
  // Canonical boxes are disjoint, so per-box overlaps add up.
  switch (b.dim()) {
    case 1: {
      double total = 0.0;
      for (const auto& box : region.boxes())
        total += ball_slab_volume(b, box.axes[0].lo.to_double(), box.axes[0].hi.to_double(), 0);
      return total;
    }
    case 2: {
      double total = 0.0;
      for (const auto& box : region.boxes())
        total += disk_box_overlap_area(b.center[0], b.center[1], box.axes[0].lo.to_double(),
                                       box.axes[0].hi.to_double(), box.axes[1].lo.to_double(),
                                       box.axes[1].hi.to_double(), b.radius);
      return total;
    }
    default:
      return region_ball_volume(b, region, McParams{seed, mc_samples}).value;
  }
}

}  // namespace halo
