#include <algorithm>
#include <cmath>

#include "common.hpp"
#include "wblab/error.hpp"
#include "wblab/experiments.hpp"

namespace wblab {

DecompositionParams DecompositionParams::preset(int d, double mu, double T) {
  if (!(mu > 0.0) || !(T > 0.0)) throw Error("DecompositionParams: mu and T must be positive");
  DecompositionParams dp;
  dp.T = T;
  if (d == 1) {
    dp.omega = std::pow(mu * T, -0.2);
    const double c = std::pow(T, 0.8) * std::pow(mu, -0.2);
    dp.rho = [c](double lambda) { return c / lambda; };
    dp.pair = {Exponent::of(4), Exponent::infinity(), 1};
  } else if (d == 2) {
    dp.omega = std::pow(mu, -1.0 / 6.0) * std::pow(T, -1.0 / 3.0);
    const double c = std::pow(T, 2.0 / 3.0) * std::pow(mu, -1.0 / 6.0);
    dp.rho = [c](double lambda) { return c / lambda; };
    // q = 2+ with r = inf is the endpoint; take q = 21/10, r = 42.
    dp.pair = {Exponent::of(21, 10), Exponent::of(42), 2};
  } else {
    throw Error("DecompositionParams: d must be 1 or 2");
  }
  return dp;
}

std::optional<double> DecompositionParams::first_violation(const std::vector<double>& lambdas) const {
  std::optional<double> out;
  for (double l : lambdas)
    if (rho && rho(l) > T && (!out || l > *out)) out = l;
  return out;
}

RefinedResult refined_strichartz_check(const Trajectory& traj, const ModelParams& p, const DecompositionParams& dp) {
  if (traj.snapshots.size() < 2) throw Error("refined_strichartz_check: trajectory has fewer than two snapshots");
  if (p.model != ModelKind::Whitham1D) throw Error("refined_strichartz_check: needs a Whitham trajectory");
  std::vector<double> ts, p2;
  double hr = 0.0;
  const SymbolSpec dx = SymbolSpec::derivative(1);
  for (const State& s : traj.snapshots) {
    ts.push_back(s.t);
    const double d = apply_multiplier(s.eta, dx).max_abs();
    p2.push_back(d * d);
    hr = std::max(hr, sobolev_norm(s.eta, p.s));
  }
  RefinedResult r;
  r.T = ts.back() - ts.front();
  r.lhs = std::sqrt(detail::trapezoid(ts, p2));
  const double th = dp.theta;
  r.rhs = std::pow(p.mu, -0.2 - th) * std::pow(r.T, 0.3 + th) * hr +
          p.eps * std::pow(p.mu, -0.4 - th) * std::pow(r.T, 1.1 + th) * hr * hr;
  r.ratio = r.rhs > 0.0 ? r.lhs / r.rhs : 0.0;
  return r;
}

}  // namespace wblab
