#include <algorithm>
#include <cmath>

#include "common.hpp"
#include "wblab/error.hpp"
#include "wblab/experiments.hpp"

namespace wblab {

namespace {

Field product(const Field& a, const Field& b) {
  Field out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= b[i];
  return out;
}

double grad_sup(const Field& f) {
  std::vector<Field> parts;
  for (int j = 1; j <= f.grid.dim(); ++j) parts.push_back(apply_multiplier(f, SymbolSpec::derivative(j)));
  double m = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    double s = 0.0;
    for (const auto& p : parts) s += p[i] * p[i];
    m = std::max(m, std::sqrt(s));
  }
  return m;
}

double commutator_norm(const SymbolSpec& op, const Field& f, const Field& g) {
  const Field a = apply_multiplier(product(f, g), op);
  const Field b = product(f, apply_multiplier(g, op));
  return lp_norm(a - b, 2.0);
}

}  // namespace

double commutator_ratio_tilbert(const Field& f, const Field& g, double s, double mu) {
  const double num = commutator_norm(SymbolSpec::bessel(s) * SymbolSpec::sqrt_tmu(mu), f, g);
  const double den = grad_sup(f) * sobolev_norm(g, s - 1.0) + sobolev_norm(f, s) * g.max_abs();
  return den > 0.0 ? num / den : 0.0;
}

double commutator_ratio_inv_tilbert(const Field& f, const Field& g, double s, double mu) {
  const double num = commutator_norm(SymbolSpec::bessel(s) * SymbolSpec::inv_sqrt_tmu(mu), f, g);
  const SymbolSpec half = SymbolSpec::bessel_mu(0.5, mu);
  const double den = grad_sup(f) * lp_norm(apply_multiplier(g, SymbolSpec::bessel(s - 1.0) * half), 2.0) +
                     lp_norm(apply_multiplier(f, SymbolSpec::bessel(s) * half), 2.0) * g.max_abs();
  return den > 0.0 ? num / den : 0.0;
}

CommutatorReport commutator_probe(const CommutatorConfig& cfg) {
  if (cfg.d != 1 && cfg.d != 2) throw ConfigError("commutator.d: must be 1 or 2");
  if (cfg.mus.empty() || cfg.bands.empty() || cfg.per_band < 1) throw ConfigError("commutator: empty ensemble");
  const Grid g(cfg.d, cfg.n, cfg.length);
  const double top = *std::max_element(cfg.bands.begin(), cfg.bands.end());
  // Products of two members must stay below Nyquist.
  if (2.0 * top >= 0.5 * cfg.n * g.dk()) throw ConfigError("commutator.bands: products would alias on this grid");

  struct Pair {
    Field f, g;
  };
  std::vector<Pair> pairs;
  std::uint64_t seed = cfg.seed;
  for (double bf : cfg.bands)
    for (double bg : cfg.bands)
      for (int k = 0; k < cfg.per_band; ++k) {
        Field f = random_band(g, 0.0, bf, seed++, 1.0);
        for (auto& x : f.values) x += 0.5;
        pairs.push_back({std::move(f), random_band(g, 0.0, bg, seed++, 1.0)});
      }

  CommutatorReport rep;
  rep.points = detail::parallel_map(cfg.mus.size(), [&](std::size_t i) {
    CommutatorPoint p;
    p.mu = cfg.mus[i];
    for (const auto& pr : pairs) {
      p.max_tilbert = std::max(p.max_tilbert, commutator_ratio_tilbert(pr.f, pr.g, cfg.s, p.mu));
      p.max_inv_tilbert = std::max(p.max_inv_tilbert, commutator_ratio_inv_tilbert(pr.f, pr.g, cfg.s, p.mu));
    }
    return p;
  });
  double lo_a = kInfinity, lo_b = kInfinity;
  for (const auto& p : rep.points) {
    rep.max_tilbert = std::max(rep.max_tilbert, p.max_tilbert);
    rep.max_inv_tilbert = std::max(rep.max_inv_tilbert, p.max_inv_tilbert);
    lo_a = std::min(lo_a, p.max_tilbert);
    lo_b = std::min(lo_b, p.max_inv_tilbert);
  }
  rep.spread_tilbert = lo_a > 0.0 ? rep.max_tilbert / lo_a : kInfinity;
  rep.spread_inv_tilbert = lo_b > 0.0 ? rep.max_inv_tilbert / lo_b : kInfinity;
  return rep;
}

}  // namespace wblab

namespace wblab {

CommutatorConfig standard_commutator(int d, std::uint64_t seed) {
  CommutatorConfig c;
  c.d = d;
  c.seed = seed;
  if (d == 2) {
    c.n = 128;
    c.length = 16.0 * M_PI;
    c.bands = {0.5, 1.0, 2.0, 3.5};
    c.per_band = 2;
  }
  return c;
}

}  // namespace wblab
