#include "halo/halo_lab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

#include "halo/covering.hpp"
#include "halo/iterated_chain.hpp"
#include "halo/maximal_1d.hpp"
#include "halo/parallel.hpp"
#include "halo/rng.hpp"
#include "halo/sweep_io.hpp"

namespace halo {

OperatorFamily::OperatorFamily(FamilyKind k, int n) : kind(k), dim(n) {
  if (n < 1 || n > 3) throw std::invalid_argument("OperatorFamily: dimension must be 1..3");
  if (k == FamilyKind::Intervals1D && n != 1)
    throw std::invalid_argument("OperatorFamily: interval family requires n = 1");
  if (k != FamilyKind::Intervals1D && n == 1)
    throw std::invalid_argument("OperatorFamily: use the interval family in n = 1");
}

std::string OperatorFamily::name() const {
  const char* base = nullptr;
  switch (kind) {
    case FamilyKind::Intervals1D: base = "intervals"; break;
    case FamilyKind::UncenteredBalls: base = "balls"; break;
    case FamilyKind::UncenteredCubes: base = "cubes"; break;
    case FamilyKind::CenteredBalls: base = "centered-balls"; break;
    case FamilyKind::CenteredCubes: base = "centered-cubes"; break;
    case FamilyKind::AxisRectangles: base = "rects"; break;
    case FamilyKind::IteratedDirectional: base = "iterated"; break;
  }
  return std::string(base) + std::to_string(dim) + "d";
}

OperatorFamily OperatorFamily::parse(const std::string& name) {
  std::string base = name;
  int n = 0;
  if (base.size() > 2 && base.back() == 'd') {
    n = base[base.size() - 2] - '0';
    base = base.substr(0, base.size() - 2);
  }
  FamilyKind k;
  if (base == "intervals") k = FamilyKind::Intervals1D;
  else if (base == "balls") k = FamilyKind::UncenteredBalls;
  else if (base == "cubes") k = FamilyKind::UncenteredCubes;
  else if (base == "centered-balls") k = FamilyKind::CenteredBalls;
  else if (base == "centered-cubes") k = FamilyKind::CenteredCubes;
  else if (base == "rects") k = FamilyKind::AxisRectangles;
  else if (base == "iterated") k = FamilyKind::IteratedDirectional;
  else throw std::invalid_argument("OperatorFamily: unknown family '" + name + "'");
  return OperatorFamily(k, n);
}

namespace {

struct FloatBox {
  double lo[3], hi[3];
};

std::vector<FloatBox> float_boxes(const BoxSet& s) {
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

double box_overlap(const std::vector<FloatBox>& eboxes, int n, const double* lo,
                   const double* hi) {
  double total = 0.0;
  for (const auto& fb : eboxes) {
    double v = 1.0;
    for (int i = 0; i < n; ++i) {
      const double w = std::min(hi[i], fb.hi[i]) - std::max(lo[i], fb.lo[i]);
      if (w <= 0.0) {
        v = 0.0;
        break;
      }
      v *= w;
    }
    total += v;
  }
  return total;
}

double cube_overlap(const std::vector<FloatBox>& eboxes, int n, const double* c, double half) {
  double lo[3], hi[3];
  for (int i = 0; i < n; ++i) {
    lo[i] = c[i] - half;
    hi[i] = c[i] + half;
  }
  return box_overlap(eboxes, n, lo, hi);
}

}  // namespace

CandidateField CandidateField::build(const OperatorFamily& family, const BoxSet& E,
                                     double grid_step, const CandidateSpec& spec,
                                     std::uint64_t seed) {
  if (E.empty()) throw std::domain_error("CandidateField: empty set");
  if (E.dim() != family.dim) throw std::invalid_argument("CandidateField: dimension mismatch");
  if (!(grid_step > 0.0)) throw std::domain_error("CandidateField: grid step must be positive");
  if (spec.ladder_sizes < 1 || spec.offsets_per_axis < 1)
    throw std::domain_error("CandidateField: candidate spec must be nonempty");

  CandidateField f;
  const int n = family.dim;
  f.n_ = n;
  f.grid_ = grid_step;
  f.set_measure_ = E.measure().to_double();

  const Box bb = E.bounding_box();
  double whi[3] = {0, 0, 0};
  double max_extent = 0.0;
  for (int i = 0; i < n; ++i) {
    f.wlo_[i] = bb.axes[i].lo.to_double() - spec.window_pad;
    whi[i] = bb.axes[i].hi.to_double() + spec.window_pad;
    f.cells_[i] = std::max<long>(1, static_cast<long>(std::ceil((whi[i] - f.wlo_[i]) / grid_step)));
    max_extent = std::max(max_extent, bb.axes[i].hi.to_double() - bb.axes[i].lo.to_double());
  }
  long total = 1;
  for (int i = 0; i < n; ++i) total *= f.cells_[i];
  f.best_.assign(static_cast<std::size_t>(total), 0.0);

  const auto eboxes = float_boxes(E);
  const double size_max = spec.size_max > 0.0 ? spec.size_max : 2.0 * max_extent;
  const double g = grid_step;

  auto cell_index = [&](long ix, long iy, long iz) {
    long idx = ix;
    if (n > 1) idx = idx * f.cells_[1] + iy;
    if (n > 2) idx = idx * f.cells_[2] + iz;
    return static_cast<std::size_t>(idx);
  };

  // Cells [i0, i1] along an axis whose closed spans lie inside [lo, hi].
  auto inner_range = [&](int axis, double lo, double hi, long& i0, long& i1) {
    i0 = static_cast<long>(std::ceil((lo - f.wlo_[axis]) / g - 1e-12));
    i1 = static_cast<long>(std::floor((hi - f.wlo_[axis]) / g + 1e-12)) - 1;
    i0 = std::max(i0, 0L);
    i1 = std::min(i1, f.cells_[axis] - 1);
  };

  auto mark_box = [&](const double* lo, const double* hi, double dens) {
    long r0[3] = {0, 0, 0}, r1[3] = {0, 0, 0};
    for (int i = 0; i < n; ++i) {
      inner_range(i, lo[i], hi[i], r0[i], r1[i]);
      if (r0[i] > r1[i]) return;
    }
    for (long ix = r0[0]; ix <= r1[0]; ++ix)
      for (long iy = (n > 1 ? r0[1] : 0); iy <= (n > 1 ? r1[1] : 0); ++iy)
        for (long iz = (n > 2 ? r0[2] : 0); iz <= (n > 2 ? r1[2] : 0); ++iz) {
          double& b = f.best_[cell_index(ix, iy, iz)];
          if (dens > b) b = dens;
        }
  };

  switch (family.kind) {
    case FamilyKind::Intervals1D: {
      const double lattice = spec.lattice_1d > 0.0 ? spec.lattice_1d : 8.0 * g;
      const long P = static_cast<long>(std::floor((whi[0] - f.wlo_[0]) / lattice));
      // For a fixed left endpoint, a cell is covered by (a,b) for every
      // lattice b past its right edge, so the best density over those
      // candidates is a suffix maximum over b.
      std::vector<double> dens(static_cast<std::size_t>(P) + 1);
      for (long ia = 0; ia < P; ++ia) {
        const double a = f.wlo_[0] + ia * lattice;
        for (long ib = ia + 1; ib <= P; ++ib) {
          const double b = f.wlo_[0] + ib * lattice;
          dens[static_cast<std::size_t>(ib)] = box_overlap(eboxes, 1, &a, &b) / (b - a);
        }
        for (long ib = P - 1; ib > ia; --ib)
          dens[static_cast<std::size_t>(ib)] =
              std::max(dens[static_cast<std::size_t>(ib)], dens[static_cast<std::size_t>(ib + 1)]);
        long c0 = static_cast<long>(std::ceil((a - f.wlo_[0]) / g - 1e-12));
        for (long ic = std::max(c0, 0L); ic < f.cells_[0]; ++ic) {
          const double cell_end = f.wlo_[0] + (ic + 1) * g;
          const long ib = static_cast<long>(std::ceil((cell_end - f.wlo_[0]) / lattice - 1e-12));
          if (ib > P) break;
          const double d = dens[static_cast<std::size_t>(std::max(ib, ia + 1))];
          double& best = f.best_[static_cast<std::size_t>(ic)];
          if (d > best) best = d;
        }
        f.candidates_ += static_cast<std::uint64_t>(P - ia);
      }
      break;
    }

    case FamilyKind::UncenteredCubes: {
      for (int lev = 0; lev < spec.ladder_sizes; ++lev) {
        const double s = size_max / std::pow(2.0, lev);
        if (s < g) break;
        const double step = s / spec.offsets_per_axis;
        const double vol = std::pow(s, n);
        long pos[3] = {1, 1, 1};
        for (int i = 0; i < n; ++i)
          pos[i] = std::max<long>(1, static_cast<long>(std::ceil((whi[i] - f.wlo_[i]) / step)));
        double lo[3], hi[3];
        for (long px = 0; px < pos[0]; ++px)
          for (long py = 0; py < (n > 1 ? pos[1] : 1); ++py)
            for (long pz = 0; pz < (n > 2 ? pos[2] : 1); ++pz) {
              lo[0] = f.wlo_[0] + px * step;
              if (n > 1) lo[1] = f.wlo_[1] + py * step;
              if (n > 2) lo[2] = f.wlo_[2] + pz * step;
              for (int i = 0; i < n; ++i) hi[i] = lo[i] + s;
              ++f.candidates_;
              const double ov = box_overlap(eboxes, n, lo, hi);
              if (ov > 0.0) mark_box(lo, hi, ov / vol);
            }
      }
      break;
    }

    case FamilyKind::AxisRectangles:
    case FamilyKind::IteratedDirectional: {
      // Rectangle averages bound both the strong and the iterated operator
      // from below (M_S <= M_1...M_n pointwise), so one candidate family
      // serves both kinds.
      std::vector<double> sizes;
      for (int lev = 0; lev < spec.ladder_sizes; ++lev) {
        const double s = size_max / std::pow(2.0, lev);
        if (s >= g) sizes.push_back(s);
      }
      std::vector<int> pick(static_cast<std::size_t>(n), 0);
      while (true) {
        double side[3], step[3];
        double vol = 1.0;
        long pos[3] = {1, 1, 1};
        for (int i = 0; i < n; ++i) {
          side[i] = sizes[static_cast<std::size_t>(pick[static_cast<std::size_t>(i)])];
          step[i] = side[i] / spec.offsets_per_axis;
          vol *= side[i];
          pos[i] = std::max<long>(1, static_cast<long>(std::ceil((whi[i] - f.wlo_[i]) / step[i])));
        }
        double lo[3], hi[3];
        for (long px = 0; px < pos[0]; ++px)
          for (long py = 0; py < (n > 1 ? pos[1] : 1); ++py)
            for (long pz = 0; pz < (n > 2 ? pos[2] : 1); ++pz) {
              lo[0] = f.wlo_[0] + px * step[0];
              if (n > 1) lo[1] = f.wlo_[1] + py * step[1];
              if (n > 2) lo[2] = f.wlo_[2] + pz * step[2];
              for (int i = 0; i < n; ++i) hi[i] = lo[i] + side[i];
              ++f.candidates_;
              const double ov = box_overlap(eboxes, n, lo, hi);
              if (ov > 0.0) mark_box(lo, hi, ov / vol);
            }
        int axis = n - 1;
        while (axis >= 0 && ++pick[static_cast<std::size_t>(axis)] ==
                                static_cast<int>(sizes.size())) {
          pick[static_cast<std::size_t>(axis)] = 0;
          --axis;
        }
        if (axis < 0) break;
      }
      break;
    }

    case FamilyKind::UncenteredBalls: {
      for (int lev = 0; lev < spec.ladder_sizes; ++lev) {
        const double r = 0.5 * size_max / std::pow(2.0, lev);
        if (2.0 * r < g) break;
        const double step = r / spec.offsets_per_axis;
        long pos[3] = {1, 1, 1};
        for (int i = 0; i < n; ++i)
          pos[i] = std::max<long>(1, static_cast<long>(std::ceil((whi[i] - f.wlo_[i]) / step)));
        double c[3];
        for (long px = 0; px < pos[0]; ++px)
          for (long py = 0; py < (n > 1 ? pos[1] : 1); ++py)
            for (long pz = 0; pz < (n > 2 ? pos[2] : 1); ++pz) {
              c[0] = f.wlo_[0] + px * step;
              if (n > 1) c[1] = f.wlo_[1] + py * step;
              if (n > 2) c[2] = f.wlo_[2] + pz * step;
              Ball ball(std::vector<double>(c, c + n), r);
              ++f.candidates_;
              const double ov =
                  ball_boxset_overlap(ball, E, mix_seed(seed, f.candidates_), 2000);
              if (ov <= 0.0) continue;
              const double dens = ov / ball.volume();
              // Mark cells whose closed span lies inside the ball, row by row.
              long y0 = 0, y1 = 0, z0 = 0, z1 = 0;
              if (n > 1) inner_range(1, c[1] - r, c[1] + r, y0, y1);
              if (n > 2) inner_range(2, c[2] - r, c[2] + r, z0, z1);
              for (long iy = y0; iy <= y1; ++iy)
                for (long iz = z0; iz <= z1; ++iz) {
                  double rem = r * r;
                  if (n > 1) {
                    const double e0 = f.wlo_[1] + iy * g - c[1];
                    const double e1 = f.wlo_[1] + (iy + 1) * g - c[1];
                    const double dy = std::max(std::abs(e0), std::abs(e1));
                    rem -= dy * dy;
                  }
                  if (n > 2) {
                    const double e0 = f.wlo_[2] + iz * g - c[2];
                    const double e1 = f.wlo_[2] + (iz + 1) * g - c[2];
                    const double dz = std::max(std::abs(e0), std::abs(e1));
                    rem -= dz * dz;
                  }
                  if (rem <= 0.0) continue;
                  const double w = std::sqrt(rem);
                  long x0 = 0, x1 = 0;
                  inner_range(0, c[0] - w, c[0] + w, x0, x1);
                  for (long ix = x0; ix <= x1; ++ix) {
                    double& b = f.best_[cell_index(ix, iy, iz)];
                    if (dens > b) b = dens;
                  }
                }
            }
      }
      break;
    }

    case FamilyKind::CenteredBalls:
    case FamilyKind::CenteredCubes: {
      const bool balls = family.kind == FamilyKind::CenteredBalls;
      std::vector<double> radii;
      for (int lev = 0; lev < spec.ladder_sizes; ++lev) {
        const double r = 0.5 * size_max / std::pow(2.0, lev);
        if (2.0 * r >= g) radii.push_back(r);
      }
      double c[3];
      for (long ix = 0; ix < f.cells_[0]; ++ix)
        for (long iy = 0; iy < (n > 1 ? f.cells_[1] : 1); ++iy)
          for (long iz = 0; iz < (n > 2 ? f.cells_[2] : 1); ++iz) {
            c[0] = f.wlo_[0] + (ix + 0.5) * g;
            if (n > 1) c[1] = f.wlo_[1] + (iy + 0.5) * g;
            if (n > 2) c[2] = f.wlo_[2] + (iz + 0.5) * g;
            double best = 0.0;
            for (double r : radii) {
              ++f.candidates_;
              double dens;
              if (balls) {
                Ball ball(std::vector<double>(c, c + n), r);
                dens = ball_boxset_overlap(ball, E, mix_seed(seed, f.candidates_), 2000) /
                       ball.volume();
              } else {
                dens = cube_overlap(eboxes, n, c, r) / std::pow(2.0 * r, n);
              }
              best = std::max(best, dens);
            }
            double& b = f.best_[cell_index(ix, iy, iz)];
            if (best > b) b = best;
          }
      break;
    }
  }
  return f;
}

double CandidateField::lower_ratio(double alpha) const {
  long count = 0;
  if (alpha >= 1.0) {
    // Level-one probe: candidates of full density witness {M chi_E = 1}.
    for (double b : best_)
      if (b >= 1.0 - 1e-12) ++count;
  } else {
    for (double b : best_)
      if (b > alpha) ++count;
  }
  double cellvol = 1.0;
  for (int i = 0; i < n_; ++i) cellvol *= grid_;
  return static_cast<double>(count) * cellvol / set_measure_;
}

namespace {

std::string describe_set(const BoxSet& E) {
  return "boxes=" + std::to_string(E.boxes().size()) +
         ",measure=" + format_double(E.measure().to_double());
}

std::optional<double> paper_upper_bound(const OperatorFamily& family, double alpha) {
  switch (family.kind) {
    case FamilyKind::Intervals1D:
      return theorem2_bound(alpha, 1);
    case FamilyKind::IteratedDirectional:
    case FamilyKind::AxisRectangles:
    case FamilyKind::UncenteredCubes:
    case FamilyKind::CenteredCubes:
      // Rectangle / cube averages are dominated by the iterated operator.
      return theorem2_bound(alpha, family.dim);
    case FamilyKind::UncenteredBalls:
    case FamilyKind::CenteredBalls: {
      const double delta = std::pow(1.0 - alpha, family.dim / (family.dim + 1.0));
      return theorem3_bound(alpha, delta, family.dim);
    }
  }
  return std::nullopt;
}

}  // namespace

SweepRecord sampled_superlevel_ratio(const OperatorFamily& family, const BoxSet& E, double alpha,
                                     double grid_step, const CandidateSpec& spec,
                                     std::uint64_t seed) {
  CandidateField field = CandidateField::build(family, E, grid_step, spec, seed);
  SweepRecord rec;
  rec.alpha = alpha;
  rec.lower_ratio = field.lower_ratio(alpha);
  rec.family = family.name();
  rec.set_desc = describe_set(E);
  rec.grid_step = grid_step;
  rec.seed = seed;
  rec.candidates = field.candidate_count();
  return rec;
}

std::vector<SweepRecord> alpha_sweep(const OperatorFamily& family, const BoxSet& E,
                                     const std::vector<double>& alphas, const SweepOptions& opts) {
  if (alphas.empty()) throw std::domain_error("alpha_sweep: empty ladder");
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (!(alphas[i] > 0.0 && alphas[i] < 1.0))
      throw std::domain_error("alpha_sweep: alphas must lie in (0,1)");
    if (i > 0 && !(alphas[i] > alphas[i - 1]))
      throw std::domain_error("alpha_sweep: alphas must be strictly increasing");
  }

  std::vector<SweepRecord> out(alphas.size());
  const std::string desc = describe_set(E);

  if (family.kind == FamilyKind::Intervals1D && !opts.force_sampled) {
    std::vector<Interval> ivs;
    for (const auto& b : E.boxes()) ivs.push_back(b.axes[0]);
    const IntervalSet E1 = IntervalSet::from_raw(std::move(ivs));
    parallel_for(alphas.size(), [&](std::size_t i) {
      SuperlevelResult r = superlevel_indicator(E1, Rational::from_double(alphas[i]));
      SweepRecord rec;
      rec.alpha = alphas[i];
      rec.lower_ratio = r.ratio.to_double();
      rec.family = family.name();
      rec.set_desc = desc;
      rec.grid_step = 0.0;  // exact engine, no discretization
      rec.seed = opts.seed;
      out[i] = std::move(rec);
    });
  } else {
    CandidateField field = CandidateField::build(family, E, opts.grid_step, opts.spec, opts.seed);
    for (std::size_t i = 0; i < alphas.size(); ++i) {
      SweepRecord rec;
      rec.alpha = alphas[i];
      rec.lower_ratio = field.lower_ratio(alphas[i]);
      rec.family = family.name();
      rec.set_desc = desc;
      rec.grid_step = opts.grid_step;
      rec.seed = opts.seed;
      rec.candidates = field.candidate_count();
      out[i] = std::move(rec);
    }
  }
  if (opts.bounds == BoundSource::Auto)
    for (auto& rec : out) rec.upper_bound = paper_upper_bound(family, rec.alpha);
  return out;
}

ExponentFit fit_exponent(const std::vector<std::pair<double, double>>& alpha_value) {
  ExponentFit fit;
  std::vector<double> xs, ys;
  for (const auto& [alpha, value] : alpha_value) {
    if (!(value > 1.0) || !(alpha > 0.0 && alpha < 1.0)) {
      ++fit.dropped;  // log coordinates undefined; warn through the count
      continue;
    }
    xs.push_back(std::log(1.0 / alpha - 1.0));
    ys.push_back(std::log(value - 1.0));
    fit.points.push_back({alpha, value});
  }
  if (xs.size() < 5)
    throw std::domain_error("fit_exponent: need at least 5 points with value > 1");

  const double m = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  fit.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / m;
  for (std::size_t i = 0; i < xs.size(); ++i)
    fit.max_residual =
        std::max(fit.max_residual, std::abs(ys[i] - (fit.intercept + fit.slope * xs[i])));
  return fit;
}

std::vector<std::pair<double, double>> theorem4_probe(const OperatorFamily& family,
                                                      const BoxSet& E,
                                                      const std::vector<double>& alphas,
                                                      double grid_step, const CandidateSpec& spec,
                                                      std::uint64_t seed) {
  switch (family.kind) {
    case FamilyKind::Intervals1D:
    case FamilyKind::UncenteredBalls:
    case FamilyKind::UncenteredCubes:
    case FamilyKind::AxisRectangles:
      break;
    default:
      throw std::domain_error("theorem4_probe: requires a homothecy invariant convex family");
  }
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (!(alphas[i] > 0.0 && alphas[i] <= 1.0))
      throw std::domain_error("theorem4_probe: alphas must lie in (0,1]");
    if (i > 0 && !(alphas[i] > alphas[i - 1]))
      throw std::domain_error("theorem4_probe: alphas must be strictly increasing");
  }
  CandidateField field = CandidateField::build(family, E, grid_step, spec, seed);
  std::vector<std::pair<double, double>> out;
  out.reserve(alphas.size());
  for (double a : alphas) out.emplace_back(a, field.lower_ratio(a));
  return out;
}

namespace {

constexpr double kInfeasible = -1e300;

// Fraction of the body's volume outside the slab (faces at +-1) when its top
// protrudes by h = offset-dependent amount; see the per-shape lambdas.
struct ShapeModel {
  // Returns max protrusion h for the given scale, or kInfeasible.
  double (*solve)(int n, double scale, double outside_budget);
};

double ball_outside_volume(int n, double r, double d) {
  std::vector<double> c(static_cast<std::size_t>(n), 0.0);
  c[static_cast<std::size_t>(n) - 1] = d;
  const Ball b(c, r);
  return b.volume() - ball_slab_volume(b, -1.0, 1.0, n - 1);
}

double ball_solve(int n, double r, double budget) {
  const double vol = n == 2 ? std::numbers::pi * r * r : 4.0 / 3.0 * std::numbers::pi * r * r * r;
  const double target = budget * vol;
  if (ball_outside_volume(n, r, 0.0) > target) return kInfeasible;
  // Outside volume increases with the center height d >= 0; bisect to the
  // budget boundary.
  double lo = 0.0, hi = 1.0 + r;
  for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, r); ++it) {
    const double mid = 0.5 * (lo + hi);
    (ball_outside_volume(n, r, mid) <= target ? lo : hi) = mid;
  }
  return lo + r - 1.0;
}

// Corner cut volume of a cube of side s tilted with a vertex (n=2) or the
// main diagonal (n=3) pointing up, at protrusion depth t from the vertex.
double corner_cut(int n, double s, double t) {
  if (t <= 0.0) return 0.0;
  if (n == 2) {
    const double c = std::min(std::numbers::sqrt2 * t, 2.0 * s);
    const double over = std::max(0.0, c - s);
    return 0.5 * (c * c - 2.0 * over * over);
  }
  const double c = std::min(std::numbers::sqrt3 * t, 3.0 * s);
  const double o1 = std::max(0.0, c - s);
  const double o2 = std::max(0.0, c - 2.0 * s);
  return (c * c * c - 3.0 * o1 * o1 * o1 + 3.0 * o2 * o2 * o2) / 6.0;
}

double cube_solve(int n, double s, double budget) {
  const double diag = s * (n == 2 ? std::numbers::sqrt2 : std::numbers::sqrt3);
  const double vol = std::pow(s, n);
  const double target = budget * vol;
  // v = height of the top vertex; outside = top corner cut + bottom corner cut.
  auto outside = [&](double v) {
    return corner_cut(n, s, v - 1.0) + corner_cut(n, s, diag - v - 1.0);
  };
  // The outside volume is convex in v; locate its minimum by golden section,
  // then bisect along the increasing branch to the budget boundary.
  double a = 1.0, b = 1.0 + diag;
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = outside(x1), f2 = outside(x2);
  for (int it = 0; it < 200 && b - a > 1e-12 * std::max(1.0, s); ++it) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = outside(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = outside(x2);
    }
  }
  const double vmin = 0.5 * (a + b);
  if (outside(vmin) > target) return kInfeasible;
  double lo = vmin, hi = 1.0 + diag;
  for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, s); ++it) {
    const double mid = 0.5 * (lo + hi);
    (outside(mid) <= target ? lo : hi) = mid;
  }
  return lo - 1.0;
}

}  // namespace

SlabOptimum slab_halo_optimum(SlabShape shape, int n, double alpha) {
  if (n < 2 || n > 3) throw std::domain_error("slab_halo_optimum: n must be 2 or 3");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::domain_error("slab_halo_optimum: alpha must lie in (0,1)");
  const double budget = 1.0 - alpha;
  auto solve = shape == SlabShape::Ball ? ball_solve : cube_solve;

  // Log-spaced scale scan, then golden-section refinement around the best.
  const double lg_lo = shape == SlabShape::Ball ? -5.0 : -4.0;
  const double lg_hi = shape == SlabShape::Ball ? 6.0 : 4.0;
  const int grid_pts = 45;
  double best_h = kInfeasible, best_lg = lg_lo;
  for (int i = 0; i < grid_pts; ++i) {
    const double lg = lg_lo + (lg_hi - lg_lo) * i / (grid_pts - 1);
    const double h = solve(n, std::exp2(lg), budget);
    if (h > best_h) {
      best_h = h;
      best_lg = lg;
    }
  }
  if (best_h == kInfeasible)
    throw std::runtime_error("slab_halo_optimum: no feasible scale on the scan grid");

  const double span = (lg_hi - lg_lo) / (grid_pts - 1);
  double a = best_lg - span, b = best_lg + span;
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = solve(n, std::exp2(x1), budget), f2 = solve(n, std::exp2(x2), budget);
  int iters = 0;
  while (b - a > 1e-9 && iters < 300) {
    if (f1 >= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = solve(n, std::exp2(x1), budget);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = solve(n, std::exp2(x2), budget);
    }
    ++iters;
  }
  if (b - a > 1e-8)
    throw std::runtime_error("slab_halo_optimum: refinement did not converge (alpha=" +
                             std::to_string(alpha) + ", iters=" + std::to_string(iters) +
                             ", width=" + std::to_string(b - a) + ")");

  SlabOptimum opt;
  opt.scale = std::exp2(0.5 * (a + b));
  opt.height = std::max({solve(n, opt.scale, budget), best_h, f1, f2});
  opt.offset = shape == SlabShape::Ball ? 1.0 + opt.height - opt.scale : 1.0 + opt.height;

  if (shape == SlabShape::Ball) {
    // The extremal center sits on the axis through the test point: lateral
    // perturbations leave both slab caps unchanged, so they cannot improve h.
    SplitMix64 rng(7);
    for (int k = 0; k < 10; ++k) {
      std::vector<double> c(static_cast<std::size_t>(n), 0.0);
      for (int i = 0; i + 1 < n; ++i) c[static_cast<std::size_t>(i)] = rng.next_in(-1.0, 1.0);
      c[static_cast<std::size_t>(n) - 1] = opt.offset;
      const Ball moved(c, opt.scale);
      const double outside = moved.volume() - ball_slab_volume(moved, -1.0, 1.0, n - 1);
      if (outside < budget * moved.volume() - 1e-6 * moved.volume())
        throw std::runtime_error("slab_halo_optimum: off-axis perturbation improved the bound");
    }
  }
  return opt;
}

double slab_halo_height(SlabShape shape, int n, double alpha) {
  return slab_halo_optimum(shape, n, alpha).height;
}

std::vector<double> parse_alpha_ladder(const std::string& text) {
  std::vector<double> out;
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    int k1 = 0, k2 = 0;
    if (std::sscanf(text.substr(0, dots).c_str(), "1-2^-%d", &k1) != 1 ||
        std::sscanf(text.substr(dots + 2).c_str(), "1-2^-%d", &k2) != 1 || k1 < 1 || k2 < k1)
      throw std::invalid_argument("parse_alpha_ladder: expected '1-2^-A..1-2^-B' with A <= B");
    for (int k = k1; k <= k2; ++k) out.push_back(1.0 - std::exp2(-k));
    return out;
  }
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const std::string tok =
        text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (tok.empty()) throw std::invalid_argument("parse_alpha_ladder: empty entry");
    if (tok.find('/') != std::string::npos) {
      out.push_back(Rational::parse(tok).to_double());
    } else {
      std::size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (used != tok.size())
        throw std::invalid_argument("parse_alpha_ladder: malformed number '" + tok + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  for (std::size_t i = 1; i < out.size(); ++i)
    if (!(out[i] > out[i - 1]))
      throw std::invalid_argument("parse_alpha_ladder: values must be strictly increasing");
  return out;
}

}  // namespace halo
