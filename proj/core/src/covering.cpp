#include "halo/covering.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "halo/rng.hpp"

namespace halo {

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

bool in_boxes(const std::vector<FloatBox>& boxes, int n, const double* p) {
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

double binomial_band(double frac, int samples) {
  return 3.0 * std::sqrt(std::max(frac * (1.0 - frac), 1.0 / samples) / samples);
}

}  // namespace

DensityBallFamily::DensityBallFamily(std::vector<Ball> balls, BoxSet set, double alpha,
                                     McParams vol)
    : set_(std::move(set)), alpha_(alpha), vol_(vol) {
  if (balls.empty()) throw std::invalid_argument("DensityBallFamily: empty family");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::domain_error("DensityBallFamily: alpha must lie in (0,1)");
  for (const auto& b : balls)
    if (b.dim() != set_.dim())
      throw std::invalid_argument("DensityBallFamily: ball/set dimension mismatch");

  for (std::size_t i = 0; i < balls.size(); ++i) {
    DensityBall db;
    db.ball = balls[i];
    db.input_index = static_cast<int>(i);
    db.overlap_with_set = region_ball_volume(
        balls[i], set_, McParams{mix_seed(vol_.seed, i), vol_.samples});
    db.density = db.overlap_with_set.value / balls[i].volume();
    db.density_band = db.overlap_with_set.error / balls[i].volume();
    if (db.density + db.density_band <= alpha_)
      throw std::invalid_argument("DensityBallFamily: ball density not above alpha");
    balls_.push_back(std::move(db));
  }
  std::stable_sort(balls_.begin(), balls_.end(), [](const DensityBall& a, const DensityBall& b) {
    const double va = a.ball.volume(), vb = b.ball.volume();
    if (va != vb) return va > vb;
    return a.input_index < b.input_index;
  });
}

bool SelectionResult::is_selected(int family_index) const {
  return std::binary_search(selected.begin(), selected.end(), family_index);
}

SelectionResult cf_select(const DensityBallFamily& family, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::domain_error("cf_select: delta must lie in (0,1)");
  const int n = family.dim();
  const auto& balls = family.balls();
  const McParams& vol = family.volume_params();

  SelectionResult res;
  res.delta = delta;
  res.dilation = 1.0 + 2.0 * std::pow(delta, 1.0 / n);
  res.overlaps.resize(balls.size());
  std::vector<Ball> chosen;

  for (std::size_t j = 0; j < balls.size(); ++j) {
    const Ball& b = balls[j].ball;
    const double bvol = b.volume();

    // One sampling pass per ball measures simultaneously the overlap with the
    // already selected union, the leftover piece, and the piece inside E.
    const int samples = vol.samples;
    SplitMix64 rng(mix_seed(vol.seed, 0x5e1ec7 + j));
    const auto eboxes = float_boxes(family.set());
    long in_union = 0, piece_in_set = 0;
    double p[3];
    for (int accepted = 0; accepted < samples;) {
      for (int i = 0; i < n; ++i)
        p[i] = rng.next_in(b.center[static_cast<std::size_t>(i)] - b.radius,
                           b.center[static_cast<std::size_t>(i)] + b.radius);
      if (!b.contains({p, static_cast<std::size_t>(n)})) continue;
      ++accepted;
      bool u = false;
      for (const auto& s : chosen)
        if (s.contains({p, static_cast<std::size_t>(n)})) {
          u = true;
          break;
        }
      if (u) {
        ++in_union;
      } else if (in_boxes(eboxes, n, p)) {
        ++piece_in_set;
      }
    }

    const double ufrac = static_cast<double>(in_union) / samples;
    const double pfrac = static_cast<double>(piece_in_set) / samples;
    VolumeEstimate overlap{bvol * ufrac, bvol * binomial_band(ufrac, samples)};
    res.overlaps[j] = overlap;

    const double threshold = (1.0 - delta) * bvol;
    bool select = overlap.value <= threshold;
    if (std::abs(overlap.value - threshold) <= overlap.error) {
      res.flagged.push_back(static_cast<int>(j));
      // Straddling the rule: resolve toward selection. Extra selected balls
      // keep the dilated cover valid and only loosen the constants.
      select = true;
    }
    if (select) {
      res.selected.push_back(static_cast<int>(j));
      res.pieces.push_back(VolumeEstimate{bvol - overlap.value, overlap.error});
      res.pieces_in_set.push_back(VolumeEstimate{bvol * pfrac, bvol * binomial_band(pfrac, samples)});
      chosen.push_back(b);
    }
  }
  return res;
}

CoverCheck dilation_cover_check(const DensityBallFamily& family, const SelectionResult& result,
                                long samples, std::uint64_t seed) {
  const int n = family.dim();
  const auto& balls = family.balls();
  CoverCheck check;
  check.per_ball_witness.assign(balls.size(), -1);

  double lo[3], hi[3];
  for (int i = 0; i < n; ++i) {
    lo[i] = balls[0].ball.center[static_cast<std::size_t>(i)] - balls[0].ball.radius;
    hi[i] = balls[0].ball.center[static_cast<std::size_t>(i)] + balls[0].ball.radius;
  }
  for (const auto& db : balls)
    for (int i = 0; i < n; ++i) {
      lo[i] = std::min(lo[i], db.ball.center[static_cast<std::size_t>(i)] - db.ball.radius);
      hi[i] = std::max(hi[i], db.ball.center[static_cast<std::size_t>(i)] + db.ball.radius);
    }

  auto test_point = [&](const double* p) {
    for (std::size_t j = 0; j < balls.size(); ++j) {
      if (!balls[j].ball.contains({p, static_cast<std::size_t>(n)})) continue;
      ++check.samples;
      int witness = -1;
      for (int k : result.selected) {
        if (k > static_cast<int>(j)) break;  // family order is size order
        const Ball& sb = balls[static_cast<std::size_t>(k)].ball;
        double d2 = 0.0;
        for (int i = 0; i < n; ++i) {
          const double d = p[i] - sb.center[static_cast<std::size_t>(i)];
          d2 += d * d;
        }
        const double reach = result.dilation * sb.radius;
        if (d2 <= reach * reach * (1.0 + 1e-12)) {
          witness = k;
          break;
        }
      }
      if (witness < 0) {
        check.counterexamples.push_back(
            CoverWitness{std::vector<double>(p, p + n), static_cast<int>(j), -1});
      } else {
        check.per_ball_witness[j] = witness;
      }
    }
  };

  SplitMix64 rng(mix_seed(seed, 0xc0ffee));
  double p[3];
  for (long accepted = 0; accepted < samples;) {
    for (int i = 0; i < n; ++i) p[i] = rng.next_in(lo[i], hi[i]);
    bool in_any = false;
    for (const auto& db : balls)
      if (db.ball.contains({p, static_cast<std::size_t>(n)})) {
        in_any = true;
        break;
      }
    if (!in_any) continue;
    ++accepted;
    test_point(p);
  }

  // Points just inside each sphere are the hardest to cover; add a ring of
  // deterministic boundary samples per ball.
  const int ring = 64;
  for (const auto& db : balls) {
    for (int t = 0; t < ring; ++t) {
      const double r = db.ball.radius * (1.0 - 1e-9);
      if (n == 1) {
        if (t > 1) break;
        p[0] = db.ball.center[0] + (t == 0 ? -r : r);
      } else if (n == 2) {
        const double a = 2.0 * std::numbers::pi * t / ring;
        p[0] = db.ball.center[0] + r * std::cos(a);
        p[1] = db.ball.center[1] + r * std::sin(a);
      } else {
        const double a = 2.0 * std::numbers::pi * t / ring;
        const double z = -1.0 + 2.0 * (t + 0.5) / ring;
        const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
        p[0] = db.ball.center[0] + r * rho * std::cos(a * 7.0);
        p[1] = db.ball.center[1] + r * rho * std::sin(a * 7.0);
        p[2] = db.ball.center[2] + r * z;
      }
      test_point(p);
    }
  }
  return check;
}

double theorem3_bound(double alpha, double delta, int n) {
  if (n < 1 || n > 3) throw std::domain_error("theorem3_bound: dimension must be 1..3");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("theorem3_bound: alpha in (0,1)");
  if (!(delta > 1.0 - alpha && delta < 1.0))
    throw std::domain_error("theorem3_bound: requires 1 - alpha < delta < 1");
  const double dil = 1.0 + 2.0 * std::pow(delta, 1.0 / n);
  return std::pow(dil, n) * delta / (delta - (1.0 - alpha));
}

TauberianCertificate tauberian_upper_from_selection(const DensityBallFamily& family,
                                                    const SelectionResult& result) {
  TauberianCertificate cert;
  for (const auto& piece : result.pieces) {
    cert.sum_pieces += piece.value;
    cert.sum_band += piece.error;
  }
  const double dil_n = std::pow(result.dilation, family.dim());
  cert.certified_upper = dil_n * cert.sum_pieces;
  cert.theorem_rhs = theorem3_bound(family.alpha(), result.delta, family.dim()) *
                     family.set().measure().to_double();
  cert.within_band = cert.certified_upper <= cert.theorem_rhs + dil_n * cert.sum_band;
  return cert;
}

}  // namespace halo
