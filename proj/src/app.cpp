#include "wblab/app.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <map>
#include <sstream>

#include "wblab/error.hpp"
#include "wblab/io.hpp"

#ifndef WBLAB_SOURCE_DIR
#define WBLAB_SOURCE_DIR "."
#endif

namespace wblab {

namespace {

std::string fmt(double x) { return format_double(x); }

/// For text meant to be read, not parsed back.
std::string brief(double x) {
  std::ostringstream os;
  os << std::setprecision(6) << x;
  return os.str();
}

std::string grid_text(const Grid& g) {
  std::ostringstream os;
  os << g.dim() << "d n=" << g.n() << " L=" << brief(g.length());
  return os.str();
}

ExperimentReport base_report(const std::string& name, const RunConfig& cfg, const std::string& grid,
                             const std::string& constants_version) {
  ExperimentReport r;
  r.name = name;
  r.provenance.seed = cfg.seed;
  r.provenance.grid = grid;
  r.provenance.threads = experiment_threads();
  r.provenance.constants_version = constants_version;
  return r;
}

struct Context {
  const RunConfig& cfg;
  std::ostream& log;
  std::string out;

  std::string path(const std::string& file) const { return out + "/" + file; }
  Constants constants() const { return load_constants(resolve_constants_path(cfg.constants)); }
  int finish(const ExperimentReport& rep) const {
    write_summary(path("summary.json"), rep, cfg.echo);
    log << rep.name << ": " << (rep.pass ? "PASS" : "FAIL") << " (" << rep.tolerance << ")\n";
    for (const auto& n : rep.notes) log << "  " << n << "\n";
    return rep.pass ? 0 : 1;
  }
};

int cmd_simulate(const Context& c) {
  const RunConfig& cfg = c.cfg;
  const Grid g = cfg.grid();
  ModelParams p = cfg.model;
  const State s0 = make_initial_state(g, p, cfg.data_spec());
  const Trajectory tr = evolve(s0, p, cfg.step);
  write_csv(c.path("trajectory.csv"), trajectory_table(tr));
  if (!tr.snapshots.empty()) {
    ensure_directory(c.path("snapshots"));
    for (std::size_t i = 0; i < tr.snapshots.size(); ++i) {
      char name[64];
      std::snprintf(name, sizeof name, "snapshots/snap_%05zu.bin", i);
      write_snapshot(c.path(name), tr.snapshots[i], p);
    }
  }
  CsvTable plot;
  plot.schema = "plot";
  plot.columns = {"t", tr.monitored == NormKind::Hs ? "hs_norm" : "vsmu_norm"};
  for (std::size_t i = 0; i < tr.records.size(); ++i)
    plot.rows.push_back({fmt(tr.times[i]), fmt(norm_of(tr.records[i], tr.monitored))});
  emit_plot_data(c.path("plots"), "norm_vs_time", plot, "t", {plot.columns[1]});

  ExperimentReport rep = base_report("simulate", cfg, grid_text(g), "");
  rep.params = {{"model", to_string(p.model)}, {"data", cfg.data_spec().str()}};
  rep.metrics = {{"steps", static_cast<double>(tr.steps)},
                 {"termination_time", tr.termination.time},
                 {"final_norm", norm_of(tr.records.back(), tr.monitored)}};
  rep.notes.push_back("termination: " + to_string(tr.termination.kind));
  rep.tolerance = "finite trajectory";
  rep.pass = tr.termination.kind != TerminationKind::NonFinite;
  return c.finish(rep);
}

int cmd_decay(const Context& c) {
  const auto& b = c.cfg.decay;
  DecayReport r;
  ExperimentReport rep =
      base_report("decay-test", c.cfg, grid_text(Grid(b.cfg.d, b.cfg.n, b.cfg.length)), "");
  try {
    r = decay_experiment(b.cfg);
  } catch (const WrapAroundError& e) {
    rep.pass = false;
    rep.tolerance = "window must end before wrap-around";
    rep.metrics = {{"required_length", e.required_length()}, {"length", b.cfg.length}};
    rep.notes.push_back(e.what());
    c.finish(rep);
    return 2;
  }
  write_csv(c.path("decay.csv"), decay_table(r));
  CsvTable plot = decay_table(r);
  plot.schema = "plot";
  plot.columns.pop_back();
  for (auto& row : plot.rows) row.pop_back();
  emit_plot_data(c.path("plots"), "decay_loglog", plot, "t", {"linf"});
  rep.params = {{"d", std::to_string(b.cfg.d)}, {"mu", fmt(b.cfg.mu)}, {"lambda", fmt(b.cfg.lambda)}};
  rep.fits = {{"linf_vs_t", r.fit}};
  rep.metrics = {{"slope", r.fit.exponent},
                 {"r_squared", r.fit.r_squared},
                 {"max_bound_ratio", r.max_bound_ratio},
                 {"linf_band", r.linf_band},
                 {"l1_data", r.l1_data},
                 {"group_speed", r.group_speed}};
  rep.tolerance = "slope in [" + brief(b.slope_min) + ", " + brief(b.slope_max) + "]";
  rep.pass = r.fit.exponent >= b.slope_min && r.fit.exponent <= b.slope_max;
  if (r.fit.trimmed) rep.notes.push_back("fit trimmed to the interior window");
  return c.finish(rep);
}

int cmd_strichartz(const Context& c) {
  const auto& b = c.cfg.strichartz;
  const Constants k = c.constants();
  const StrichartzReport r = strichartz_experiment(b.cfg);
  CsvTable t;
  t.schema = "strichartz";
  t.columns = {"lambda", "mu", "T", "n", "length", "ratio"};
  for (const auto& p : r.points)
    t.rows.push_back({fmt(p.lambda), fmt(p.mu), fmt(p.T), std::to_string(p.n), fmt(p.length), fmt(p.ratio)});
  write_csv(c.path("strichartz.csv"), t);
  const double cap = b.cfg.d == 1 ? k.strichartz_1d : k.strichartz_2d;
  ExperimentReport rep = base_report("strichartz-test", c.cfg, "per point, see strichartz.csv", k.version);
  rep.params = {{"d", std::to_string(b.cfg.d)}, {"q", b.cfg.pair.q.str()}, {"r", b.cfg.pair.r.str()}};
  rep.metrics = {{"max_ratio", r.max_ratio}, {"min_ratio", r.min_ratio}, {"spread", r.spread()}, {"pinned", cap}};
  rep.tolerance = "max ratio <= " + brief(cap) + " and spread < " + brief(b.max_spread);
  rep.pass = r.max_ratio <= cap && r.spread() < b.max_spread;
  return c.finish(rep);
}

int cmd_scaling(const Context& c) {
  const auto& b = c.cfg.scaling;
  const Grid g(b.dim, b.n, b.length);
  CsvTable t;
  t.schema = "scaling";
  t.columns = {"mu", "lambda", "field", "max_error", "sup_f"};
  ExperimentReport rep = base_report("scaling-test", c.cfg, grid_text(g), "");
  rep.tolerance = "max error < 1e-10 sup|f|";
  double worst = 0.0;
  const double top = 0.6 * 0.5 * g.n() * g.dk();
  for (double mu : b.mus)
    for (double lam : b.lambdas)
      for (int i = 0; i < b.fields; ++i) {
        const Field f = random_band(g, 0.0, top, c.cfg.seed + 1 + i, 1.0);
        const ScalingResult s = scaling_identity_test(mu, lam, b.t, f);
        t.rows.push_back({fmt(mu), fmt(lam), std::to_string(i), fmt(s.max_error), fmt(s.sup_f)});
        worst = std::max(worst, s.max_error / s.sup_f);
        rep.pass = rep.pass && s.pass;
      }
  write_csv(c.path("scaling.csv"), t);
  rep.metrics = {{"max_relative_error", worst}};
  return c.finish(rep);
}

int cmd_refined(const Context& c) {
  const Constants k = c.constants();
  const auto runs = refined_ensemble(c.cfg.refined.count, c.cfg.seed);
  CsvTable t;
  t.schema = "refined";
  t.columns = {"run", "T", "lhs", "rhs", "ratio"};
  double worst = 0.0;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const auto& r = runs[i];
    DecompositionParams dp = DecompositionParams::preset(1, r.params.mu, r.step.t_end);
    dp.theta = c.cfg.refined.theta;
    dp.gamma = c.cfg.refined.gamma;
    const RefinedResult res = refined_strichartz_check(evolve(r.initial, r.params, r.step), r.params, dp);
    t.rows.push_back({std::to_string(i), fmt(res.T), fmt(res.lhs), fmt(res.rhs), fmt(res.ratio)});
    worst = std::max(worst, res.ratio);
  }
  write_csv(c.path("refined.csv"), t);
  ExperimentReport rep = base_report("refined-check", c.cfg, grid_text(runs.front().grid), k.version);
  rep.metrics = {{"max_ratio", worst}, {"pinned", k.refined}};
  rep.tolerance = "max ratio <= " + brief(k.refined);
  rep.pass = worst <= k.refined;
  return c.finish(rep);
}

int cmd_commutator(const Context& c) {
  const Constants k = c.constants();
  CommutatorConfig cc = c.cfg.commutator.cfg;
  cc.seed = c.cfg.seed + 1;
  const CommutatorReport r = commutator_probe(cc);
  CsvTable t;
  t.schema = "commutator";
  t.columns = {"mu", "max_ratio_sqrt_t", "max_ratio_inv_sqrt_t"};
  for (const auto& p : r.points) t.rows.push_back({fmt(p.mu), fmt(p.max_tilbert), fmt(p.max_inv_tilbert)});
  write_csv(c.path("commutator.csv"), t);
  ExperimentReport rep = base_report("commutator-probe", c.cfg, grid_text(Grid(cc.d, cc.n, cc.length)), k.version);
  rep.metrics = {{"max_ratio_sqrt_t", r.max_tilbert},
                 {"max_ratio_inv_sqrt_t", r.max_inv_tilbert},
                 {"spread_sqrt_t", r.spread_tilbert},
                 {"spread_inv_sqrt_t", r.spread_inv_tilbert},
                 {"pinned_sqrt_t", k.commutator_tilbert},
                 {"pinned_inv_sqrt_t", k.commutator_inv_tilbert}};
  const double sp = c.cfg.commutator.max_spread;
  rep.tolerance = "max ratios below pinned constants, spread over mu < " + brief(sp);
  rep.pass = std::isfinite(r.max_tilbert) && std::isfinite(r.max_inv_tilbert) &&
             r.max_tilbert <= k.commutator_tilbert && r.max_inv_tilbert <= k.commutator_inv_tilbert &&
             r.spread_tilbert < sp && r.spread_inv_tilbert < sp;
  return c.finish(rep);
}

int cmd_gronwall(const Context& c) {
  const Constants k = c.constants();
  CsvTable t;
  t.schema = "gronwall";
  t.columns = {"model", "run", "c", "max_ratio", "max_ratio_half_c", "max_ratio_vnorm", "c_star"};
  ExperimentReport rep = base_report("gronwall-check", c.cfg, "per model ensemble", k.version);
  rep.tolerance = "ratio <= 1 with pinned c; some run exceeds 1 with c/2";
  for (ModelKind m : c.cfg.gronwall.models) {
    const double cc = k.gronwall_c(m);
    const auto runs = gronwall_ensemble(m, c.cfg.gronwall.count, c.cfg.seed);
    double worst = 0.0, worst_half = 0.0, worst_v = 0.0;
    for (std::size_t i = 0; i < runs.size(); ++i) {
      const auto& r = runs[i];
      const Trajectory tr = evolve(r.initial, r.params, r.step);
      const GronwallResult full = gronwall_check(tr, r.params, cc, k);
      const GronwallResult half = gronwall_check(tr, r.params, 0.5 * cc, k);
      t.rows.push_back({to_string(m), std::to_string(i), fmt(cc), fmt(full.max_ratio), fmt(half.max_ratio),
                        fmt(full.max_ratio_vnorm), fmt(full.c_star)});
      worst = std::max(worst, full.max_ratio);
      worst_half = std::max(worst_half, half.max_ratio);
      worst_v = std::max(worst_v, full.max_ratio_vnorm);
    }
    const std::string tag = to_string(m);
    rep.metrics.emplace_back(tag + ".max_ratio", worst);
    rep.metrics.emplace_back(tag + ".max_ratio_half_c", worst_half);
    if (m != ModelKind::Whitham1D) rep.metrics.emplace_back(tag + ".max_ratio_vnorm", worst_v);
    bool ok = worst <= 1.0 && worst_half > 1.0;
    if (m != ModelKind::Whitham1D) ok = ok && worst_v <= 1.0;
    if (!ok) rep.notes.push_back(tag + ": bound or negative control failed");
    rep.pass = rep.pass && ok;
  }
  write_csv(c.path("gronwall.csv"), t);
  return c.finish(rep);
}

int cmd_lifespan(const Context& c) {
  const RunConfig& cfg = c.cfg;
  const Constants k = c.constants();
  LifespanConfig lc;
  lc.model = cfg.model.model;
  lc.n = cfg.n;
  lc.length = cfg.length;
  lc.data = cfg.data_spec();
  lc.eps = cfg.lifespan.eps;
  lc.mus = cfg.lifespan.mus;
  lc.s = cfg.model.s;
  lc.h0 = cfg.model.h0;
  lc.step = cfg.step;
  lc.monotone_tolerance = cfg.lifespan.monotone_tolerance;
  const LifespanReport r = lifespan_sweep(lc);
  write_csv(c.path("sweep.csv"), sweep_table(r));

  ExperimentReport rep = base_report("lifespan-sweep", cfg, grid_text(cfg.grid()), k.version);
  rep.params = {{"model", to_string(lc.model)}, {"data", lc.data.str()}};
  const double kappa = k.kappa(lc.model);
  std::optional<double> a_at_one;
  for (const auto& [mu, f] : r.eps_fits) {
    rep.fits.emplace_back("t_double_vs_eps@mu=" + fmt(mu), f);
    if (mu == 1.0) a_at_one = -f.exponent;
  }
  for (const auto& [eps, f] : r.mu_fits) rep.fits.emplace_back("t_double_vs_mu@eps=" + fmt(eps), f);
  rep.metrics = {{"min_ratio_to_theorem_time", r.min_theorem_ratio},
                 {"kappa", kappa},
                 {"excluded", static_cast<double>(r.excluded)},
                 {"a_at_mu_1", a_at_one.value_or(std::nan(""))}};
  rep.notes = r.monotonicity_notes;
  rep.notes.push_back("theorem times are lower bounds; long measured lifespans cannot contradict them");
  if (r.excluded > 0) rep.notes.push_back(std::to_string(r.excluded) + " points excluded from fits (blown up, non-finite or eps = 0)");
  const bool lower = r.min_theorem_ratio >= kappa;
  const bool expo = a_at_one && *a_at_one >= cfg.lifespan.min_exponent;
  rep.tolerance = "monotone within " + brief(lc.monotone_tolerance) + ", t_double >= kappa * theorem time, a >= " +
                  brief(cfg.lifespan.min_exponent) + " at mu = 1";
  rep.pass = r.monotone_eps && r.monotone_mu && lower && expo;

  CsvTable plot;
  plot.schema = "plot";
  plot.columns = {"eps", "mu", "t_double"};
  for (const auto& p : r.points)
    if (p.t_double) plot.rows.push_back({fmt(p.eps), fmt(p.mu), fmt(*p.t_double)});
  emit_plot_data(c.path("plots"), "t_double_vs_eps", plot, "eps", {"t_double"});
  return c.finish(rep);
}

int cmd_calibrate(const Context& c) {
  CalibrationOptions opt;
  opt.version = c.cfg.calibrate.version;
  opt.lifespan = c.cfg.calibrate.lifespan;
  const CalibrationReport r = calibrate_constants(opt);
  const std::string dest = c.cfg.calibrate.output.empty() ? c.path("constants.json") : c.cfg.calibrate.output;
  save_constants(dest, r.constants);
  ExperimentReport rep = base_report("calibrate", c.cfg, "held-out ensembles", r.constants.version);
  rep.metrics = r.observed;
  rep.notes.push_back("constants written to " + dest);
  rep.tolerance = "none";
  return c.finish(rep);
}

int cmd_norms(const Context& c) {
  const RunConfig& cfg = c.cfg;
  State s(cfg.grid());
  ModelParams p = cfg.model;
  if (!cfg.norms.snapshot.empty()) {
    LoadedSnapshot ls = read_snapshot(cfg.norms.snapshot);
    s = std::move(ls.state);
    p = ls.params;
  } else {
    s = make_initial_state(cfg.grid(), p, cfg.data_spec());
  }
  const NormReport r = norm_report(s, p);
  CsvTable t;
  t.schema = "norms";
  t.columns = {"t", "hs_norm", "vsmu_norm", "linf_eta", "linf_v", "p_of_t", "h_of_t", "h_min", "mass", "energy"};
  t.rows.push_back({fmt(s.t), fmt(r.hs), fmt(r.vsmu), fmt(r.linf_eta), fmt(r.linf_v), fmt(r.p_of_t), fmt(r.h_of_t),
                    fmt(r.h_min), fmt(r.mass), fmt(r.energy)});
  write_csv(c.path("norms.csv"), t);
  ExperimentReport rep = base_report("norms", cfg, grid_text(s.grid()), "");
  rep.metrics = {{"hs", r.hs}, {"vsmu", r.vsmu}, {"energy", r.energy}, {"t_weighted", t_weighted_norm(s, p.s, p.mu)}};
  rep.tolerance = "none";
  return c.finish(rep);
}

}  // namespace

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names{"simulate",       "decay-test",       "strichartz-test", "scaling-test",
                                              "refined-check",  "commutator-probe", "gronwall-check",  "lifespan-sweep",
                                              "calibrate",      "norms"};
  return names;
}

std::string resolve_constants_path(const std::string& path) {
  namespace fs = std::filesystem;
  if (fs::exists(path) || fs::path(path).is_absolute()) return path;
  const fs::path alt = fs::path(WBLAB_SOURCE_DIR) / path;
  return fs::exists(alt) ? alt.string() : path;
}

int run(const std::string& subcommand, const RunConfig& cfg, std::ostream& log) {
  static const std::map<std::string, std::function<int(const Context&)>> table{
      {"simulate", cmd_simulate},         {"decay-test", cmd_decay},         {"strichartz-test", cmd_strichartz},
      {"scaling-test", cmd_scaling},      {"refined-check", cmd_refined},    {"commutator-probe", cmd_commutator},
      {"gronwall-check", cmd_gronwall},   {"lifespan-sweep", cmd_lifespan},  {"calibrate", cmd_calibrate},
      {"norms", cmd_norms}};
  const auto it = table.find(subcommand);
  if (it == table.end()) {
    log << "error: unknown subcommand '" << subcommand << "'\n";
    return 2;
  }
  try {
    ensure_directory(cfg.out);
    return it->second(Context{cfg, log, cfg.out});
  } catch (const Error& e) {
    log << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace wblab
