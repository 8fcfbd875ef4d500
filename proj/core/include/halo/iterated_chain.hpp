#pragma once

#include <vector>

#include "halo/box_set.hpp"
#include "halo/maximal_1d.hpp"

namespace halo {

// Threshold ladder alpha_j = 1 - (1-alpha_1)^j, j = 1..n, with alpha_0 = 0.
// Consecutive thresholds telescope: (1-a_{j+1})/(a_{j+1}-a_j) = (1-a_1)/a_1
// exactly, which is what makes the per-step covering factors equal.
struct AlphaChain {
  Rational alpha1;
  std::vector<Rational> thresholds;  // alpha_1..alpha_n

  static AlphaChain make(const Rational& alpha1, int n);
};

// Trace of the inductive majorant chain E_0 = E, E_{j+1} = {x : M_axis(
// chi_{E_j} + alpha_j chi_{E_j^c}) > alpha_{j+1}}. The E_j are computable
// box-set majorants of the true iterated superlevel sets; only the measure
// bounds are claimed, not pointwise set containment between steps.
struct ChainTrace {
  BoxSet initial;
  std::vector<int> axes;         // 0-based axis applied at each step
  AlphaChain alphas;
  std::vector<BoxSet> sets;      // E_1..E_n
  std::vector<Rational> measures;  // |E_0|..|E_n|
  Rational bound_factor;         // 1 + 4(1-alpha_1)/alpha_1
};

// One directional step: {x : M_axis(chi_S + gamma chi_{S^c})(x) > alpha},
// computed exactly per fiber cell and reassembled into a canonical BoxSet.
// Requires 0 <= gamma < alpha < 1 (alpha <= gamma throws WholeLineError).
BoxSet chain_step(const BoxSet& s, const Rational& gamma, const Rational& alpha, int axis);

// Runs the full chain along `axes` (default 0..n-1). Empty input yields an
// empty trace: every bound holds vacuously.
ChainTrace run_chain(const BoxSet& E, const Rational& alpha1, std::vector<int> axes = {});

// Closed-form bound (1 + 4 u/(1-u))^n with u = (1-alpha)^{1/n} for the
// iterated operator at level alpha; equals 1 + 4(1-alpha)/alpha when n = 1.
double theorem2_bound(double alpha, int n);

}  // namespace halo
