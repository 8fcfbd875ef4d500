#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "halo/ball.hpp"

namespace halo {

// A ball together with its measured density |B cap E|/|B|.
struct DensityBall {
  Ball ball;
  int input_index = 0;
  VolumeEstimate overlap_with_set;  // |B cap E| with band
  double density = 0.0;
  double density_band = 0.0;
};

// Family {B_j} with density(B_j) > alpha, sorted nonincreasing by volume
// (ties broken by input index). Densities are measured with the stored
// Monte Carlo parameters at construction; a ball whose density fails the
// threshold beyond its uncertainty band is rejected.
class DensityBallFamily {
 public:
  DensityBallFamily(std::vector<Ball> balls, BoxSet set, double alpha, McParams vol);

  const std::vector<DensityBall>& balls() const { return balls_; }
  const BoxSet& set() const { return set_; }
  double alpha() const { return alpha_; }
  const McParams& volume_params() const { return vol_; }
  int dim() const { return set_.dim(); }

 private:
  std::vector<DensityBall> balls_;
  BoxSet set_;
  double alpha_;
  McParams vol_;
};

struct SelectionResult {
  double delta = 0.0;
  double dilation = 0.0;                  // 1 + 2 delta^{1/n}
  std::vector<int> selected;              // indices into family order, increasing
  std::vector<VolumeEstimate> overlaps;   // per ball: |B_j cap union(selected before j)|
  std::vector<VolumeEstimate> pieces;     // per selected ball: |E~_j| = |B~_j \ earlier|
  std::vector<VolumeEstimate> pieces_in_set;  // per selected ball: |E cap E~_j|
  std::vector<int> flagged;               // balls whose decision straddled the threshold

  bool is_selected(int family_index) const;
};

// Greedy scan in size order: B_j is selected iff its overlap with the union
// of the already selected balls is <= (1-delta)|B_j|. A measurement within
// its band of the threshold is flagged and resolved toward selection, which
// can only loosen constants, never break the cover. The first ball is always
// selected.
SelectionResult cf_select(const DensityBallFamily& family, double delta);

struct CoverWitness {
  std::vector<double> point;
  int containing_ball = -1;  // family index of a ball containing the point
  int witness = -1;          // selected index whose dilate covers it, -1 = counterexample
};

struct CoverCheck {
  std::vector<CoverWitness> counterexamples;  // empty <=> cover verified on samples
  std::vector<int> per_ball_witness;          // for each ball, a covering selected index
  long samples = 0;
};

// Samples points of union(B_j) (volume samples plus near-boundary samples)
// and verifies each lies in the (1 + 2 delta^{1/n})-dilate of a selected
// ball at least as large as the ball containing it.
CoverCheck dilation_cover_check(const DensityBallFamily& family, const SelectionResult& result,
                                long samples = 10000, std::uint64_t seed = 0);

// (1 + 2 delta^{1/n})^n * delta / (delta - (1-alpha)); requires the
// admissibility window 1 - alpha < delta < 1.
double theorem3_bound(double alpha, double delta, int n);

struct TauberianCertificate {
  double sum_pieces = 0.0;       // sum |E~_j|
  double sum_band = 0.0;
  double certified_upper = 0.0;  // dilation^n * sum_pieces
  double theorem_rhs = 0.0;      // theorem3_bound * |E|
  bool within_band = false;      // certified_upper <= theorem_rhs + dilation^n * band
};

// Turns an actual selection into the certified measure bound of the covering
// argument and checks it against the closed-form bound.
TauberianCertificate tauberian_upper_from_selection(const DensityBallFamily& family,
                                                    const SelectionResult& result);

}  // namespace halo
