#include <algorithm>
#include <cmath>
#include <sstream>

#include "common.hpp"
#include "wblab/error.hpp"
#include "wblab/experiments.hpp"

namespace wblab {

namespace {

// d/dx sqrt(x tanh x).
double m_prime(double x) {
  if (x < 1e-8) return 1.0;
  const double th = std::tanh(x);
  const double sech = 1.0 / std::cosh(x);
  return (th + x * sech * sech) / (2.0 * std::sqrt(x * th));
}

}  // namespace

double band_group_speed(double lambda, double mu) {
  if (!(lambda > 0.0) || !(mu > 0.0)) throw Error("band_group_speed: lambda and mu must be positive");
  double v = 0.0;
  for (int i = 0; i <= 256; ++i) {
    const double xi = lambda * (0.5 + 1.5 * i / 256.0);
    v = std::max(v, m_prime(std::sqrt(mu) * xi));
  }
  return v;
}

double required_length(double lambda, double mu, double t_max) {
  return band_group_speed(lambda, mu) * t_max / 0.45;
}

DecayReport decay_experiment(const DecayConfig& cfg) {
  if (cfg.d != 1 && cfg.d != 2) throw ConfigError("decay.d: must be 1 or 2");
  if (!(cfg.t_min > 0.0) || !(cfg.t_max > cfg.t_min)) throw ConfigError("decay.t_window: need 0 < t_min < t_max");
  if (cfg.samples < 4) throw ConfigError("decay.samples: need at least 4");
  const Grid g(cfg.d, cfg.n, cfg.length);
  if (2.0 * cfg.lambda >= 0.5 * cfg.n * g.dk())
    throw ConfigError("decay.lambda: band 2 lambda is not resolved by the grid");
  const double need = required_length(cfg.lambda, cfg.mu, cfg.t_max);
  if (cfg.length < need) {
    std::ostringstream os;
    os << "decay: window up to t = " << cfg.t_max << " wraps around the box; need L >= " << need;
    throw WrapAroundError(os.str(), need);
  }

  DecayReport rep;
  rep.group_speed = band_group_speed(cfg.lambda, cfg.mu);
  Field f = gaussian(g, 1.0, cfg.width);
  Field absf = f;
  for (auto& x : absf.values) x = std::abs(x);
  rep.l1_data = absf.integral();

  FullSpectrum band = expand(forward(f));
  apply_in_place(band, sample_full(g, SymbolSpec::lp_band(cfg.lambda).as_symbol()));
  rep.linf_band = inverse(band).max_abs();

  const Propagator prop(g, cfg.mu);
  const double A = decay_rate(cfg.lambda, cfg.mu, cfg.d);
  std::vector<double> ts = detail::log_spaced(cfg.t_min, cfg.t_max, cfg.samples), ls;
  for (double t : ts) {
    FullSpectrum u = band;
    prop.apply(u, t, 1);
    DecaySample s;
    s.t = t;
    s.linf = inverse(u).max_abs();
    s.bound_ratio = s.linf * std::pow(t, 0.5 * cfg.d) / (A * rep.l1_data);
    rep.max_bound_ratio = std::max(rep.max_bound_ratio, s.bound_ratio);
    rep.samples.push_back(s);
    ls.push_back(s.linf);
  }
  rep.fit = fit_loglog(ts, ls);
  return rep;
}

}  // namespace wblab
