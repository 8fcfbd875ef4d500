#include "halo/iterated_chain.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace halo {

AlphaChain AlphaChain::make(const Rational& alpha1, int n) {
  if (!(Rational(0) < alpha1 && alpha1 < Rational(1)))
    throw std::domain_error("AlphaChain: alpha1 must lie in (0,1)");
  if (n < 1) throw std::domain_error("AlphaChain: n must be >= 1");
  AlphaChain c;
  c.alpha1 = alpha1;
  const Rational q = Rational(1) - alpha1;
  for (int j = 1; j <= n; ++j) c.thresholds.push_back(Rational(1) - q.pow_int(j));
  return c;
}

BoxSet chain_step(const BoxSet& s, const Rational& gamma, const Rational& alpha, int axis) {
  if (gamma.sign() < 0 || !(gamma < Rational(1)))
    throw std::domain_error("chain_step: gamma must lie in [0,1)");
  if (!(alpha < Rational(1))) throw std::domain_error("chain_step: alpha must be < 1");
  if (!(gamma < alpha)) throw WholeLineError("chain_step: alpha <= gamma");
  if (s.empty()) return BoxSet(s.dim());

  std::vector<FiberCell> out;
  for (const auto& fc : fiber_decompose(s, axis)) {
    SuperlevelResult r = superlevel_mixed(MixedIndicator{fc.fiber, gamma}, alpha);
    out.push_back(FiberCell{fc.cell, std::move(r.set)});
  }
  return assemble_fibers(s.dim(), axis, out);
}

ChainTrace run_chain(const BoxSet& E, const Rational& alpha1, std::vector<int> axes) {
  const int n = E.dim();
  if (axes.empty()) {
    axes.resize(static_cast<std::size_t>(n));
    std::iota(axes.begin(), axes.end(), 0);
  }
  if (static_cast<int>(axes.size()) != n)
    throw std::invalid_argument("run_chain: axis order must list every axis once");

  ChainTrace t;
  t.initial = E;
  t.axes = axes;
  t.alphas = AlphaChain::make(alpha1, n);
  t.bound_factor = Rational(1) + Rational(4) * (Rational(1) - alpha1) / alpha1;
  t.measures.push_back(E.measure());
  if (E.empty()) return t;

  BoxSet cur = E;
  Rational gamma(0);
  for (int j = 0; j < n; ++j) {
    cur = chain_step(cur, gamma, t.alphas.thresholds[j], axes[j]);
    t.measures.push_back(cur.measure());
    t.sets.push_back(cur);
    gamma = t.alphas.thresholds[j];
  }
  return t;
}

double theorem2_bound(double alpha, int n) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("theorem2_bound: alpha in (0,1)");
  if (n < 1) throw std::domain_error("theorem2_bound: n >= 1");
  const double u = std::pow(1.0 - alpha, 1.0 / n);
  return std::pow(1.0 + 4.0 * u / (1.0 - u), n);
}

}  // namespace halo
