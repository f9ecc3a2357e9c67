#include "wblab/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wblab/error.hpp"

namespace wblab {

void StepConfig::validate() const {
  auto fail = [](const std::string& m) { throw ConfigError(m); };
  if (!(dt > 0.0) || !std::isfinite(dt)) fail("step.dt: must be positive");
  if (!(t_end > 0.0) || !std::isfinite(t_end)) fail("step.t_end: must be positive");
  if (!(cfl_safety > 0.0 && cfl_safety <= 1.0)) fail("step.cfl_safety: must lie in (0, 1]");
  if (!(doubling_factor > 1.0)) fail("step.doubling_factor: must exceed 1");
  if (!(blowup_threshold > 1.0)) fail("step.blowup_threshold: must exceed 1");
  if (snapshot_every < 0) fail("step.snapshot_every: must be >= 0");
  if (record_every < 1) fail("step.record_every: must be >= 1");
}

std::string to_string(TerminationKind k) {
  switch (k) {
    case TerminationKind::HorizonReached:
      return "horizon";
    case TerminationKind::Doubled:
      return "doubled";
    case TerminationKind::BlownUp:
      return "blown_up";
    case TerminationKind::NonFinite:
      return "non_finite";
  }
  return "unknown";
}

NormKind parse_norm_kind(std::string_view name) {
  if (name == "hs") return NormKind::Hs;
  if (name == "vsmu") return NormKind::Vsmu;
  if (name == "linf") return NormKind::Linf;
  if (name == "energy") return NormKind::Energy;
  throw ConfigError("norm kind '" + std::string(name) + "' is not one of hs, vsmu, linf, energy");
}

double norm_of(const NormReport& r, NormKind k) {
  switch (k) {
    case NormKind::Hs:
      return r.hs;
    case NormKind::Vsmu:
      return r.vsmu;
    case NormKind::Linf:
      return std::max(r.linf_eta, r.linf_v);
    case NormKind::Energy:
      return r.energy;
  }
  return r.hs;
}

NormKind default_norm_kind(const ModelParams& p) { return p.has_velocity() ? NormKind::Vsmu : NormKind::Hs; }

namespace {

// Lawson RK4 in the frame of the exact linear flow E:
//   a = N(u)                      b = N(E_{h/2}(u + h/2 a))
//   c = N(E_{h/2} u + h/2 b)      d = N(E_h u + h E_{h/2} c)
//   u+ = E_h u + h/6 (E_h a + 2 E_{h/2}(b + c) + d)
template <class Sys, class U>
U lawson_rk4(const Sys& sys, const U& u, double h) {
  if (h == 0.0) return u;
  const U a = sys.nonlinear(u);

  U t = u;
  sys.axpy(t, 0.5 * h, a);
  sys.propagate(t, 0.5 * h);
  const U b = sys.nonlinear(t);

  U uh = u;
  sys.propagate(uh, 0.5 * h);
  t = uh;
  sys.axpy(t, 0.5 * h, b);
  const U c = sys.nonlinear(t);

  U ch = c;
  sys.propagate(ch, 0.5 * h);
  U uf = u;
  sys.propagate(uf, h);
  t = uf;
  sys.axpy(t, h, ch);
  const U d = sys.nonlinear(t);

  U bc = b;
  sys.axpy(bc, 1.0, c);
  sys.propagate(bc, 0.5 * h);
  U af = a;
  sys.propagate(af, h);

  U out = uf;
  sys.axpy(out, h / 6.0, af);
  sys.axpy(out, h / 3.0, bc);
  sys.axpy(out, h / 6.0, d);
  return out;
}

struct PrimitiveSys {
  const Model& m;
  Model::Spectra nonlinear(const Model::Spectra& u) const { return m.nonlinear(u); }
  void propagate(Model::Spectra& u, double dt) const { m.propagate(u, dt); }
  static void axpy(Model::Spectra& y, double a, const Model::Spectra& x) {
    for (std::size_t j = 0; j < y.size(); ++j)
      for (std::size_t i = 0; i < y[j].size(); ++i) y[j][i] += a * x[j][i];
  }
};

struct DiagSys {
  const ModelParams& p;
  DiagState nonlinear(const DiagState& u) const { return diag_rhs(u, p, false); }
  static void propagate(DiagState& u, double dt) { diag_propagate(u, dt); }
  static void axpy(DiagState& y, double a, const DiagState& x) {
    for (std::size_t i = 0; i < y.u_plus.size(); ++i) {
      y.u_plus[i] += a * x.u_plus[i];
      y.u_minus[i] += a * x.u_minus[i];
    }
  }
};

}  // namespace

void if_rk4_step(const Model& m, Model::Spectra& u, double dt) {
  if (!(dt >= 0.0)) throw Error("if_rk4_step: dt must be >= 0");
  u = lawson_rk4(PrimitiveSys{m}, u, dt);
  m.project(u);
}

State if_rk4_step(const State& state, double dt, const ModelParams& p) {
  const Model m(state.grid(), p);
  auto u = m.to_spectra(state);
  if_rk4_step(m, u, dt);
  return m.to_state(u, state.t + dt);
}

DiagState if_rk4_step(const DiagState& diag, double dt, const ModelParams& p) {
  if (!(dt >= 0.0)) throw Error("if_rk4_step: dt must be >= 0");
  // The mean of v is carried outside (u+, u-) and stays fixed.
  return lawson_rk4(DiagSys{p}, diag, dt);
}

namespace {

double sup_state(const State& s) { return std::max(s.eta.max_abs(), s.linf_v()); }

double transport_dt(const StepConfig& cfg, const ModelParams& p, const Grid& g, double sup) {
  if (!cfg.adaptive_dt) return cfg.dt;
  const double dt = cfg.cfl_safety * g.dx() / std::max(1.0, p.eps * sup);
  return std::min(cfg.dt, dt);
}

}  // namespace

Trajectory evolve(const State& initial, const ModelParams& p, const StepConfig& cfg) {
  cfg.validate();
  const Grid& g = initial.grid();
  if (!initial.all_finite()) throw NonFiniteError("evolve: initial state is not finite");
  if (p.model == ModelKind::WB2D) require_curl_free(initial.v);
  if (p.has_velocity()) {
    const double hm = h_min(initial, p.eps);
    if (hm < p.h0) {
      std::ostringstream os;
      os << "evolve: non-cavitation fails at t = 0, min(1 + eps eta) = " << hm << " < h0 = " << p.h0;
      throw NonCoerciveError(os.str());
    }
  }
  const Model m(g, p);
  Trajectory traj;
  traj.monitored = default_norm_kind(p);

  auto u = m.to_spectra(initial);
  m.project(u);
  double t = initial.t;
  State cur = m.to_state(u, t);

  const NormReport r0 = norm_report(cur, p);
  traj.times.push_back(t);
  traj.records.push_back(r0);
  if (cfg.snapshot_every > 0) traj.snapshots.push_back(cur);

  const double n0 = norm_of(r0, traj.monitored);
  const double sup0 = sup_state(cur);
  const double t_end = initial.t + cfg.t_end;
  double dt = transport_dt(cfg, p, g, sup0);
  traj.termination = {TerminationKind::HorizonReached, t_end};

  std::size_t step = 0;
  while (t < t_end) {
    if (step > 0 && step % 50 == 0) dt = transport_dt(cfg, p, g, sup_state(cur));
    double h = dt;
    // Land exactly on t_end; avoid a sliver step.
    const bool final_step = t + h >= t_end || t_end - (t + h) < 1e-9 * h;
    if (final_step) h = t_end - t;
    try {
      if_rk4_step(m, u, h);
    } catch (const NonFiniteError&) {
      traj.termination = {TerminationKind::NonFinite, t + h};
      break;
    }
    ++step;
    t = final_step ? t_end : t + h;
    cur = m.to_state(u, t);
    if (!cur.all_finite()) {
      traj.termination = {TerminationKind::NonFinite, t};
      break;
    }
    const bool last = t >= t_end;
    if (cfg.snapshot_every > 0 && (last || step % cfg.snapshot_every == 0)) traj.snapshots.push_back(cur);
    const double sup = sup_state(cur);
    const bool blown = sup > cfg.blowup_threshold * sup0;
    if (last || blown || step % cfg.record_every == 0) {
      traj.times.push_back(t);
      traj.records.push_back(norm_report(cur, p));
      const double nv = norm_of(traj.records.back(), traj.monitored);
      if (!std::isfinite(nv)) {
        traj.termination = {TerminationKind::NonFinite, t};
        break;
      }
      if (cfg.stop_on_double && n0 > 0.0 && nv > cfg.doubling_factor * n0) {
        traj.termination = {TerminationKind::Doubled, *doubling_time(traj, traj.monitored, cfg.doubling_factor)};
        break;
      }
    }
    if (blown) {
      traj.termination = {TerminationKind::BlownUp, t};
      break;
    }
  }
  traj.steps = step;
  return traj;
}

std::optional<double> doubling_time(const Trajectory& traj, NormKind kind, double factor) {
  if (traj.records.empty()) return std::nullopt;
  const double n0 = norm_of(traj.records.front(), kind);
  if (!(n0 > 0.0)) return std::nullopt;
  const double target = factor * n0;
  for (std::size_t i = 1; i < traj.records.size(); ++i) {
    const double n1 = norm_of(traj.records[i - 1], kind);
    const double n2 = norm_of(traj.records[i], kind);
    if (n2 > target) {
      const double t1 = traj.times[i - 1];
      const double t2 = traj.times[i];
      if (!(n1 > 0.0) || n2 == n1) return t2;
      const double frac = (std::log(target) - std::log(n1)) / (std::log(n2) - std::log(n1));
      return t1 + std::clamp(frac, 0.0, 1.0) * (t2 - t1);
    }
  }
  return std::nullopt;
}

}  // namespace wblab
