#include <algorithm>
#include <cmath>

#include "common.hpp"
#include "wblab/error.hpp"
#include "wblab/experiments.hpp"

namespace wblab {

namespace {

int next_pow2(double x) {
  int n = 1;
  while (n < x) n *= 2;
  return n;
}

double time_norm(const std::vector<double>& ts, const std::vector<double>& ys, const Exponent& q) {
  if (q.is_infinite()) return *std::max_element(ys.begin(), ys.end());
  const double qv = q.value();
  std::vector<double> p(ys.size());
  for (std::size_t i = 0; i < ys.size(); ++i) p[i] = std::pow(ys[i], qv);
  return std::pow(detail::trapezoid(ts, p), 1.0 / qv);
}

}  // namespace

double strichartz_ratio(const Grid& g, double mu, double lambda, const AdmissiblePair& pair, double T,
                        int time_samples) {
  if (!check_admissible(pair)) throw Error("strichartz: pair (" + pair.q.str() + ", " + pair.r.str() + ") is not admissible");
  if (pair.d != g.dim()) throw Error("strichartz: pair dimension does not match the grid");
  if (time_samples < 64) throw Error("strichartz: need at least 64 time samples");
  // Frequency-localized point source: coefficient beta(|xi| / lambda) on every mode.
  FullSpectrum src(g);
  const auto beta = sample_full(g, SymbolSpec::lp_band(lambda).as_symbol());
  for (std::size_t i = 0; i < src.size(); ++i) src[i] = beta[i];
  const double l2 = l2_norm(src);

  std::vector<double> ts{0.0};
  for (double t : detail::log_spaced(1e-3 * T, T, time_samples - 1)) ts.push_back(t);
  const Propagator prop(g, mu);
  const double r = pair.r.is_infinite() ? kInfinity : pair.r.value();
  std::vector<double> ys;
  for (double t : ts) {
    FullSpectrum u = src;
    prop.apply(u, t, 1);
    ys.push_back(lp_norm(inverse(u), r));
  }
  const double A = decay_rate(lambda, mu, g.dim());
  const double e = 0.5 - pair.r.reciprocal.value();
  return time_norm(ts, ys, pair.q) / (std::pow(A, e) * l2);
}

StrichartzReport strichartz_experiment(const StrichartzConfig& cfg) {
  if (!check_admissible(cfg.pair)) throw Error("strichartz: pair (" + cfg.pair.q.str() + ", " + cfg.pair.r.str() + ") is not admissible");
  if (cfg.pair.d != cfg.d) throw ConfigError("strichartz.pair: dimension differs from strichartz.d");
  struct Job {
    double mu, lambda;
  };
  std::vector<Job> jobs;
  for (double mu : cfg.mus)
    for (double lam : cfg.lambdas) jobs.push_back({mu, lam});

  StrichartzReport rep;
  rep.points = detail::parallel_map(jobs.size(), [&](std::size_t i) {
    const Job& j = jobs[i];
    StrichartzPoint p;
    p.mu = j.mu;
    p.lambda = j.lambda;
    p.T = cfg.fixed_T > 0.0 ? cfg.fixed_T : cfg.horizon_factor * dispersive_time(j.lambda, j.mu, cfg.d);
    const double v = band_group_speed(j.lambda, j.mu);
    p.length = std::max(2.0 * v * p.T + 40.0 / j.lambda, 16.0 * M_PI / j.lambda);
    p.n = std::max(64, next_pow2(2.6 * j.lambda * p.length / M_PI));
    const Grid g(cfg.d, p.n, p.length);
    p.ratio = strichartz_ratio(g, j.mu, j.lambda, cfg.pair, p.T, cfg.time_samples);
    return p;
  });
  rep.max_ratio = 0.0;
  rep.min_ratio = kInfinity;
  for (const auto& p : rep.points) {
    rep.max_ratio = std::max(rep.max_ratio, p.ratio);
    rep.min_ratio = std::min(rep.min_ratio, p.ratio);
  }
  return rep;
}

}  // namespace wblab
