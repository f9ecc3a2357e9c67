#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "common.hpp"
#include "wblab/error.hpp"
#include "wblab/experiments.hpp"

namespace wblab {

double theorem_time(ModelKind model, double eps, double mu, double data_norm) {
  if (!(eps > 0.0) || !(mu > 0.0) || !(data_norm > 0.0)) return kInfinity;
  const double shared = std::pow(mu / eps, 0.25);
  if (model == ModelKind::Whitham1D) return shared / eps * std::pow(data_norm, -1.25);
  const double d = model_dim(model);
  return std::pow(eps, -(d + 3.0) / 4.0) * shared * std::pow(data_norm, -(d + 4.0) / 4.0);
}

LifespanConfig standard_lifespan(ModelKind model, double amplitude_scale) {
  LifespanConfig c;
  c.model = model;
  c.n = 2048;
  c.length = 64.0 * M_PI;
  c.step.dt = 0.05;
  c.step.t_end = 400.0;
  c.step.record_every = 1;
  c.step.stop_on_double = true;
  if (model == ModelKind::WB2D) {
    c.n = 256;
    c.step.dt = 0.1;
    c.s = 2.3;
  }
  // Nonnegative, so 1 + eps eta stays above h0 at every eps.
  c.data = {"raised_cosine", {0.0625, 4.0 * amplitude_scale}};
  return c;
}

namespace {

std::optional<double> time_of(const LifespanPoint& p) { return p.excluded ? std::nullopt : p.t_double; }

// a then b along increasing parameter; `decreasing` means the lifespan should not grow.
void check_pair(const LifespanPoint& a, const LifespanPoint& b, bool decreasing, double tol, bool& ok,
                std::vector<std::string>& notes) {
  if (a.excluded || b.excluded) return;
  // No doubling within the horizon counts as an infinite lifespan.
  const double ta = a.t_double.value_or(kInfinity);
  const double tb = b.t_double.value_or(kInfinity);
  const bool bad = decreasing ? tb > (1.0 + tol) * ta : tb < (1.0 - tol) * ta;
  if (!bad) return;
  ok = false;
  std::ostringstream os;
  os << (decreasing ? "eps" : "mu") << " monotonicity: (eps=" << a.eps << ", mu=" << a.mu << ") t=" << ta
     << " vs (eps=" << b.eps << ", mu=" << b.mu << ") t=" << tb;
  notes.push_back(os.str());
}

}  // namespace

LifespanReport lifespan_sweep(const LifespanConfig& cfg) {
  if (cfg.eps.empty() || cfg.mus.empty()) throw ConfigError("lifespan: eps and mu grids must be non-empty");
  const Grid g(model_dim(cfg.model), cfg.n, cfg.length);
  std::vector<double> eps = cfg.eps, mus = cfg.mus;
  std::sort(eps.begin(), eps.end());
  std::sort(mus.begin(), mus.end());

  struct Job {
    double eps, mu;
  };
  std::vector<Job> jobs;
  for (double e : eps)
    for (double m : mus) {
      ModelParams p;
      p.model = cfg.model;
      p.eps = e;
      p.mu = m;
      p.s = cfg.s;
      p.h0 = cfg.h0;
      p.validate(false, true);
      if (p.has_velocity()) {
        const State s = make_initial_state(g, p, cfg.data);
        if (h_min(s, e) < p.h0) {
          std::ostringstream os;
          os << "lifespan: non-cavitation fails at t = 0 for eps = " << e;
          throw ConfigError(os.str());
        }
      }
      jobs.push_back({e, m});
    }

  LifespanReport rep;
  rep.points = detail::parallel_map(jobs.size(), [&](std::size_t i) {
    ModelParams p;
    p.model = cfg.model;
    p.eps = jobs[i].eps;
    p.mu = jobs[i].mu;
    p.s = cfg.s;
    p.h0 = cfg.h0;
    const State s0 = make_initial_state(g, p, cfg.data);
    LifespanPoint pt;
    pt.eps = p.eps;
    pt.mu = p.mu;
    const NormReport r0 = norm_report(s0, p);
    pt.data_norm = norm_of(r0, default_norm_kind(p));
    pt.theorem_time = theorem_time(p.model, p.eps, p.mu, pt.data_norm);
    const Trajectory tr = evolve(s0, p, cfg.step);
    pt.termination = tr.termination;
    pt.steps = tr.steps;
    if (tr.termination.kind == TerminationKind::Doubled) pt.t_double = tr.termination.time;
    pt.excluded = tr.termination.kind == TerminationKind::BlownUp ||
                  tr.termination.kind == TerminationKind::NonFinite || p.eps == 0.0;
    return pt;
  });

  const std::size_t nm = mus.size();
  auto at = [&](std::size_t ie, std::size_t im) -> const LifespanPoint& { return rep.points[ie * nm + im]; };
  const double tol = cfg.monotone_tolerance;
  for (std::size_t im = 0; im < nm; ++im)
    for (std::size_t ie = 1; ie < eps.size(); ++ie)
      check_pair(at(ie - 1, im), at(ie, im), true, tol, rep.monotone_eps, rep.monotonicity_notes);
  for (std::size_t ie = 0; ie < eps.size(); ++ie)
    for (std::size_t im = 1; im < nm; ++im)
      check_pair(at(ie, im - 1), at(ie, im), false, tol, rep.monotone_mu, rep.monotonicity_notes);

  rep.min_theorem_ratio = kInfinity;
  for (const auto& p : rep.points) {
    if (p.excluded) ++rep.excluded;
    if (auto t = time_of(p)) rep.min_theorem_ratio = std::min(rep.min_theorem_ratio, *t / p.theorem_time);
  }

  // Fits need four doubled points; with fewer the fit is left out and said so.
  for (std::size_t im = 0; im < nm; ++im) {
    std::vector<double> x, y;
    for (std::size_t ie = 0; ie < eps.size(); ++ie)
      if (auto t = time_of(at(ie, im))) {
        x.push_back(eps[ie]);
        y.push_back(*t);
      }
    if (x.size() >= 4) {
      FitResult f = fit_loglog(x, y);
      rep.eps_fits.emplace_back(mus[im], f);
    } else {
      std::ostringstream os;
      os << "no eps fit at mu=" << mus[im] << ": " << x.size() << " doubled points";
      rep.monotonicity_notes.push_back(os.str());
    }
  }
  for (std::size_t ie = 0; ie < eps.size(); ++ie) {
    std::vector<double> x, y;
    for (std::size_t im = 0; im < nm; ++im)
      if (auto t = time_of(at(ie, im))) {
        x.push_back(mus[im]);
        y.push_back(*t);
      }
    if (x.size() >= 4) rep.mu_fits.emplace_back(eps[ie], fit_loglog(x, y));
  }
  return rep;
}

}  // namespace wblab
