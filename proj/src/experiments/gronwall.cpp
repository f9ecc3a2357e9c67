#include <algorithm>
#include <cmath>

#include "common.hpp"
#include "wblab/error.hpp"
#include "wblab/experiments.hpp"

namespace wblab {

double Constants::gronwall_c(ModelKind k) const {
  switch (k) {
    case ModelKind::Whitham1D:
      return gronwall_whitham;
    case ModelKind::WB1D:
      return gronwall_wb1d;
    case ModelKind::WB2D:
      return gronwall_wb2d;
  }
  return 0.0;
}

double Constants::kappa(ModelKind k) const {
  switch (k) {
    case ModelKind::Whitham1D:
      return kappa_whitham;
    case ModelKind::WB1D:
      return kappa_wb1d;
    case ModelKind::WB2D:
      return kappa_wb2d;
  }
  return 0.0;
}

GronwallResult gronwall_check(const Trajectory& traj, const ModelParams& p, double c, const Constants& k) {
  if (traj.records.empty()) throw Error("gronwall_check: trajectory has no records");
  const bool wb = p.has_velocity();
  std::vector<double> integrand;
  for (const auto& r : traj.records) integrand.push_back(wb ? r.h_of_t * r.p_of_t : r.p_of_t);
  const std::vector<double> I = detail::cumulative_trapezoid(traj.times, integrand);

  const NormReport& r0 = traj.records.front();
  const double q0 = wb ? r0.energy : r0.hs * r0.hs;
  GronwallResult out;
  out.c_star = 0.0;
  for (std::size_t i = 0; i < traj.records.size(); ++i) {
    const NormReport& r = traj.records[i];
    const double q = wb ? r.energy : r.hs * r.hs;
    const double growth = std::exp(c * p.eps * I[i]);
    const double ratio = std::isfinite(q) && q0 > 0.0 ? q / (growth * q0) : (q0 == 0.0 && q == 0.0 ? 1.0 : kInfinity);
    out.ratios.push_back(ratio);
    out.max_ratio = std::max(out.max_ratio, ratio);
    if (wb) {
      const double v0 = r0.vsmu * r0.vsmu;
      const double pref = k.coercive_c1 * k.coercive_c2 * r.h_of_t / p.h0;
      const double rv = v0 > 0.0 ? r.vsmu * r.vsmu / (pref * growth * v0) : 0.0;
      out.max_ratio_vnorm = std::max(out.max_ratio_vnorm, rv);
    }
    if (i > 0 && p.eps > 0.0 && I[i] > 0.0 && q0 > 0.0 && q > q0) {
      if (!std::isfinite(q)) {
        out.c_star = kInfinity;
      } else {
        out.c_star = std::max(out.c_star, std::log(q / q0) / (p.eps * I[i]));
      }
    }
  }
  return out;
}

std::vector<EnsembleRun> gronwall_ensemble(ModelKind model, int count, std::uint64_t seed_offset) {
  std::vector<EnsembleRun> out;
  for (int i = 0; i < count; ++i) {
    const std::uint64_t seed = seed_offset + 1 + i;
    ModelParams p;
    p.model = model;
    p.eps = 0.2;
    p.mu = 1.0;
    const bool two_d = model == ModelKind::WB2D;
    p.s = two_d ? 2.3 : 1.7;
    p.h0 = 0.5;
    const Grid g = two_d ? Grid(2, 64, 16.0 * M_PI) : Grid(1, 512, 32.0 * M_PI);
    DataSpec data;
    if (model == ModelKind::Whitham1D) {
      data = {"random_band", {0.25, 1.5, static_cast<double>(seed), 0.5}};
    } else {
      data = {"potential_gradient", {static_cast<double>(seed), 0.25, 1.5, 0.5, 0.5}};
    }
    StepConfig step;
    step.dt = 0.02;
    step.t_end = 5.0;
    step.stop_on_double = false;
    step.record_every = 1;
    out.push_back({p, g, make_initial_state(g, p, data), step});
  }
  return out;
}

CoercivityResult coercivity_sweep(const std::vector<double>& mus, int per_mu, std::uint64_t seed_offset) {
  CoercivityResult res;
  const double eps_grid[] = {0.1, 0.3, 0.6};
  const double bands[] = {1.0, 2.0, 4.0};
  for (double mu : mus) {
    for (int i = 0; i < per_mu; ++i) {
      const std::uint64_t seed = seed_offset + 1 + static_cast<std::uint64_t>(i);
      ModelParams p;
      p.model = i % 2 == 0 ? ModelKind::WB1D : ModelKind::WB2D;
      p.mu = mu;
      p.eps = eps_grid[i % 3];
      p.h0 = 0.3;
      p.s = p.model == ModelKind::WB2D ? 2.3 : 1.7;
      const Grid g = p.model == ModelKind::WB2D ? Grid(2, 64, 16.0 * M_PI) : Grid(1, 512, 32.0 * M_PI);
      const double band = bands[(i / 2) % 3];
      const double amp = 1.0 - 0.1 * (i % 5);
      const DataSpec data{"potential_gradient", {static_cast<double>(seed), 0.0, band, amp, 0.8 * amp}};
      const State s = make_initial_state(g, p, data);
      if (h_min(s, p.eps) < p.h0) continue;
      const double e = energy_wb(s, p);
      const double v2 = std::pow(v_mu_norm(s, p.s, p.mu), 2);
      const double H = h_quantity(s, p.eps);
      res.max_lower = std::max(res.max_lower, p.h0 * v2 / e);
      res.max_upper = std::max(res.max_upper, e / (H * v2));
      ++res.samples;
    }
  }
  return res;
}

}  // namespace wblab
