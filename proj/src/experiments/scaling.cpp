#include <cmath>

#include "wblab/error.hpp"
#include "wblab/experiments.hpp"

namespace wblab {

namespace {

ComplexField band_and_propagate(const Field& f, double mu, double lambda, double t) {
  FullSpectrum u = expand(forward(f));
  apply_in_place(u, sample_full(f.grid, SymbolSpec::lp_band(lambda).as_symbol()));
  Propagator(f.grid, mu).apply(u, t, 1);
  return inverse(u);
}

}  // namespace

ScalingResult scaling_identity_test(double mu, double lambda, double t, const Field& f) {
  if (!(mu > 0.0) || !(lambda > 0.0)) throw Error("scaling_identity_test: mu and lambda must be positive");
  const Grid& g = f.grid;
  // The rescaled grid has the same integer lattice, so the band must fit below Nyquist on both.
  if (2.0 * lambda >= 0.5 * g.n() * g.dk()) throw Error("scaling_identity_test: band is not resolved by the grid");
  const double r = std::sqrt(mu);
  const int d = g.dim();

  const ComplexField lhs = band_and_propagate(f, mu, lambda, t);

  const Field fs = rescale_sigma(f, r);
  ComplexField rhs = band_and_propagate(fs, 1.0, r * lambda, t / r);
  // sigma_{1/sqrt(mu)} back onto the original grid: same samples, times mu^{-d/2}.
  const double back = std::pow(r, -d);

  ScalingResult res;
  res.sup_f = f.max_abs();
  for (std::size_t i = 0; i < lhs.size(); ++i)
    res.max_error = std::max(res.max_error, std::abs(lhs[i] - back * rhs[i]));
  res.pass = res.max_error < 1e-10 * res.sup_f;
  return res;
}

}  // namespace wblab
