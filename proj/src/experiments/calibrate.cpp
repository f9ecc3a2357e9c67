#include <algorithm>
#include <cmath>

#include "common.hpp"
#include "wblab/error.hpp"
#include "wblab/experiments.hpp"

namespace wblab {

int experiment_threads() { return detail::worker_count(); }

std::vector<EnsembleRun> refined_ensemble(int count, std::uint64_t seed_offset) {
  auto runs = gronwall_ensemble(ModelKind::Whitham1D, count, seed_offset);
  for (auto& r : runs) r.step.snapshot_every = 5;
  return runs;
}

CalibrationReport calibrate_constants(const CalibrationOptions& opt) {
  CalibrationReport rep;
  Constants& k = rep.constants;
  k.version = opt.version;
  auto note = [&](const std::string& name, double v) { rep.observed.emplace_back(name, v); };

  // Coercivity first: the WB Gronwall V-form needs C1 C2 only for reporting.
  const CoercivityResult co = coercivity_sweep({1e-3, 1e-2, 0.1, 1.0}, 12, 100);
  note("coercive_lower_max", co.max_lower);
  note("coercive_upper_max", co.max_upper);
  k.coercive_c1 = opt.margin * co.max_lower;
  k.coercive_c2 = opt.margin * co.max_upper;

  for (ModelKind m : {ModelKind::Whitham1D, ModelKind::WB1D, ModelKind::WB2D}) {
    const auto runs = gronwall_ensemble(m, 10, 100);
    const auto cs = detail::parallel_map(runs.size(), [&](std::size_t i) {
      const auto& r = runs[i];
      return gronwall_check(evolve(r.initial, r.params, r.step), r.params, 0.0, k).c_star;
    });
    const double c = *std::max_element(cs.begin(), cs.end());
    note("gronwall_cstar_" + to_string(m), c);
    const double pinned = opt.margin_gronwall * c;
    if (m == ModelKind::Whitham1D) k.gronwall_whitham = pinned;
    if (m == ModelKind::WB1D) k.gronwall_wb1d = pinned;
    if (m == ModelKind::WB2D) k.gronwall_wb2d = pinned;
  }

  {
    const auto runs = refined_ensemble(10, 100);
    const auto rs = detail::parallel_map(runs.size(), [&](std::size_t i) {
      const auto& r = runs[i];
      const Trajectory tr = evolve(r.initial, r.params, r.step);
      return refined_strichartz_check(tr, r.params, DecompositionParams::preset(1, r.params.mu, r.step.t_end)).ratio;
    });
    const double m = *std::max_element(rs.begin(), rs.end());
    note("refined_ratio_max", m);
    k.refined = opt.margin * m;
  }

  {
    StrichartzConfig c1;
    const StrichartzReport r1 = strichartz_experiment(c1);
    StrichartzConfig c2;
    c2.d = 2;
    c2.pair = {Exponent::of(4), Exponent::of(4), 2};
    const StrichartzReport r2 = strichartz_experiment(c2);
    note("strichartz_1d_max", r1.max_ratio);
    note("strichartz_2d_max", r2.max_ratio);
    k.strichartz_1d = opt.margin * r1.max_ratio;
    k.strichartz_2d = opt.margin * r2.max_ratio;
  }

  {
    double a = 0.0, b = 0.0;
    for (int d : {1, 2}) {
      const CommutatorReport r = commutator_probe(standard_commutator(d, 100));
      a = std::max(a, r.max_tilbert);
      b = std::max(b, r.max_inv_tilbert);
    }
    note("commutator_tilbert_max", a);
    note("commutator_inv_tilbert_max", b);
    k.commutator_tilbert = opt.margin * a;
    k.commutator_inv_tilbert = opt.margin * b;
  }

  if (opt.lifespan) {
    for (ModelKind m : {ModelKind::Whitham1D, ModelKind::WB1D, ModelKind::WB2D}) {
      const LifespanReport r = lifespan_sweep(standard_lifespan(m, 0.75));
      note("lifespan_min_ratio_" + to_string(m), r.min_theorem_ratio);
      const double kap = std::isfinite(r.min_theorem_ratio) ? r.min_theorem_ratio / opt.margin_kappa : 0.0;
      if (m == ModelKind::Whitham1D) k.kappa_whitham = kap;
      if (m == ModelKind::WB1D) k.kappa_wb1d = kap;
      if (m == ModelKind::WB2D) k.kappa_wb2d = kap;
    }
  }
  return rep;
}

}  // namespace wblab
