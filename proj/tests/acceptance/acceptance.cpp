// Acceptance run: one PASS/FAIL line per criterion.
//
//   wblab_acceptance            all twelve
//   wblab_acceptance 3 11       selected criteria
//
// Exit status is 0 only when every selected criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "wblab/app.hpp"
#include "wblab/config.hpp"
#include "wblab/error.hpp"
#include "wblab/experiments.hpp"
#include "wblab/io.hpp"

using namespace wblab;
namespace fs = std::filesystem;

namespace {

// Tolerances, fixed here and nowhere else.
namespace tol {
constexpr double unitarity = 1e-12;
constexpr double scaling = 1e-10;
constexpr double decay_1d_lo = -0.6, decay_1d_hi = -0.4;
constexpr double decay_2d_lo = -1.15, decay_2d_hi = -0.85;
constexpr double strichartz_spread = 4.0;
constexpr double diag_rhs = 1e-10;
constexpr double diag_roundtrip = 1e-11;
constexpr double rk4_lo = 3.8, rk4_hi = 4.2;
constexpr double mass_drift = 1e-10;
constexpr double norm_drift = 1e-11;
constexpr double gronwall = 1.0;
constexpr double commutator_spread = 2.0;
constexpr double lifespan_monotone = 0.05;
constexpr double lifespan_exponent = 1.0;
}  // namespace tol

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

Constants pinned() {
  const std::string path = resolve_constants_path("data/constants.json");
  return load_constants(path);
}

Field random_field(const Grid& g, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  Field f(g);
  for (auto& x : f.values) x = nd(rng);
  return f;
}

// 1. ||S(t) f||_{H^s} = ||f||_{H^s}.
Outcome unitarity() {
  std::mt19937_64 rng(2024);
  double worst = 0.0;
  int checks = 0;
  for (int i = 0; i < 50; ++i) {
    const Grid g = i % 2 == 0 ? Grid(1, 512, 40.0) : Grid(2, 64, 20.0);
    const Field f = random_field(g, rng);
    for (double mu : {0.01, 0.1, 1.0}) {
      const Propagator prop(g, mu);
      for (double t : {1.0, 10.0, 100.0}) {
        const ComplexField u = prop.apply(ComplexField(f), t, 1);
        for (double s : {0.0, 1.7, 2.25}) {
          const double a = sobolev_norm(f, s);
          worst = std::max(worst, std::abs(sobolev_norm(u, s) - a) / a);
          ++checks;
        }
      }
    }
  }
  return {worst < tol::unitarity, num(checks) + " checks, max rel err " + num(worst)};
}

// 2. S_mu(t) P_lambda = sigma_{1/sqrt mu} S_1(t/sqrt mu) P_{sqrt mu lambda} sigma_{sqrt mu}.
Outcome scaling() {
  double worst = 0.0;
  bool pass = true;
  std::uint64_t seed = 1;
  for (int d : {1, 2}) {
    const Grid g = d == 1 ? Grid(1, 1024, 64.0) : Grid(2, 128, 16.0);
    for (double mu : {0.04, 0.25})
      for (double lam : {2.0, 8.0})
        for (int k = 0; k < 3; ++k) {
          const Field f = random_band(g, 0.0, 2.5 * lam, seed++, 1.0);
          const ScalingResult r = scaling_identity_test(mu, lam, 10.0, f);
          worst = std::max(worst, r.max_error / r.sup_f);
          pass = pass && r.max_error < tol::scaling * r.sup_f;
        }
  }
  return {pass, "max error / sup|f| = " + num(worst)};
}

// 3. L^inf decay slope of the band-limited linear flow.
Outcome decay() {
  DecayConfig c1;
  const DecayReport r1 = decay_experiment(c1);
  const RunConfig two = parse_config_text("decay:\n  d: 2\n");
  const DecayReport r2 = decay_experiment(two.decay.cfg);
  const double a = r1.fit.exponent, b = r2.fit.exponent;
  const bool pass = c1.n >= 4096 && two.decay.cfg.n >= 512 && a >= tol::decay_1d_lo && a <= tol::decay_1d_hi &&
                    b >= tol::decay_2d_lo && b <= tol::decay_2d_hi;
  return {pass, "slope 1d " + num(a) + " (n=" + std::to_string(c1.n) + "), 2d " + num(b) +
                    " (n=" + std::to_string(two.decay.cfg.n) + "^2)"};
}

// 4. Frequency-localized Strichartz ratio.
Outcome strichartz(const Constants& k) {
  StrichartzConfig c1;
  const StrichartzReport r1 = strichartz_experiment(c1);
  StrichartzConfig c2;
  c2.d = 2;
  c2.pair = {Exponent::of(4), Exponent::of(4), 2};
  const StrichartzReport r2 = strichartz_experiment(c2);
  const bool pass = r1.max_ratio <= k.strichartz_1d && r2.max_ratio <= k.strichartz_2d &&
                    r1.spread() < tol::strichartz_spread && r2.spread() < tol::strichartz_spread;
  return {pass, "1d max " + num(r1.max_ratio) + " <= " + num(k.strichartz_1d) + " spread " + num(r1.spread()) +
                    "; 2d max " + num(r2.max_ratio) + " <= " + num(k.strichartz_2d) + " spread " + num(r2.spread())};
}

double max_diff(const ComplexField& a, const ComplexField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double max_diff(const Field& a, const Field& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// 5. wb_rhs and diag_rhs agree through the transform.
Outcome diagonalization() {
  double worst_rhs = 0.0, worst_trip = 0.0;
  int count = 0;
  for (double mu : {0.1, 1.0}) {
    for (int i = 0; i < 20; ++i) {
      ModelParams p;
      p.model = i % 2 == 0 ? ModelKind::WB1D : ModelKind::WB2D;
      p.mu = mu;
      p.eps = 0.3;
      p.s = p.model == ModelKind::WB2D ? 2.3 : 1.7;
      p.h0 = 0.3;
      const Grid g = p.dim() == 1 ? Grid(1, 256, 32.0 * M_PI) : Grid(2, 64, 16.0 * M_PI);
      const double seed = 500 + i;
      const State s = make_initial_state(g, p, DataSpec{"potential_gradient", {seed, 0.0, 2.0, 0.6, 0.5}});
      const DiagState d = diagonalize(s, mu);
      const DiagState a = diagonalize(wb_rhs(s, p), mu);
      const DiagState b = diag_rhs(d, p);
      const double scale = std::max({a.u_plus.max_abs(), a.u_minus.max_abs(), 1e-300});
      worst_rhs = std::max(worst_rhs, std::max(max_diff(a.u_plus, b.u_plus), max_diff(a.u_minus, b.u_minus)) / scale);
      const State back = reconstruct(d);
      double trip = max_diff(back.eta, s.eta);
      for (std::size_t j = 0; j < s.v.size(); ++j) trip = std::max(trip, max_diff(back.v[j], s.v[j]));
      worst_trip = std::max(worst_trip, trip);
      ++count;
    }
  }
  return {worst_rhs < tol::diag_rhs && worst_trip < tol::diag_roundtrip,
          num(count) + " states, rhs rel err " + num(worst_rhs) + ", round trip " + num(worst_trip)};
}

// 6. Observed order of the integrating-factor RK4 scheme.
Outcome rk4_order() {
  ModelParams p;
  p.eps = 0.5;
  p.mu = 1.0;
  const Grid g(1, 256, 16.0 * M_PI);
  State s(g);
  s.eta = gaussian(g, 1.0, 3.0);
  const double T = 2.0;
  auto run = [&](int n) {
    State u = s;
    for (int i = 0; i < n; ++i) u = if_rk4_step(u, T / n, p);
    return u;
  };
  const State ref = run(2048);
  std::vector<double> dts, errs;
  for (int n : {32, 64, 128}) {
    dts.push_back(T / n);
    errs.push_back(max_diff(run(n).eta, ref.eta));
  }
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < dts.size(); ++i) {
    lx.push_back(std::log(dts[i]));
    ly.push_back(std::log(errs[i]));
  }
  const double slope = fit_line(lx, ly).slope;
  return {slope >= tol::rk4_lo && slope <= tol::rk4_hi,
          "slope " + num(slope) + " over dt = " + num(dts[0]) + ", " + num(dts[1]) + ", " + num(dts[2])};
}

// 7. Mass (nonlinear runs) and the eps = 0 quadratic norm over 1000 steps.
Outcome conservation() {
  bool pass = true;
  std::string detail;
  for (ModelKind m : {ModelKind::Whitham1D, ModelKind::WB1D, ModelKind::WB2D}) {
    ModelParams p;
    p.model = m;
    p.mu = 0.5;
    p.h0 = 0.3;
    p.s = m == ModelKind::WB2D ? 2.3 : 1.7;
    const Grid g = p.dim() == 1 ? Grid(1, 256, 32.0 * M_PI) : Grid(2, 64, 16.0 * M_PI);
    const DataSpec data = m == ModelKind::Whitham1D ? DataSpec{"random_band", {0.0, 2.0, 3.0, 0.5}}
                                                    : DataSpec{"potential_gradient", {3.0, 0.0, 2.0, 0.5, 0.4}};
    StepConfig c;
    c.dt = 0.01;
    c.t_end = 10.0;
    c.adaptive_dt = false;
    c.stop_on_double = false;
    c.record_every = 1000;
    p.eps = 0.3;
    const State s = make_initial_state(g, p, data);
    const Trajectory tr = evolve(s, p, c);
    const double mass = std::abs(tr.records.back().mass - tr.records.front().mass);

    p.eps = 0.0;
    State u = s;
    for (int i = 0; i < 1000; ++i) u = if_rk4_step(u, c.dt, p);
    const double q0 = m == ModelKind::Whitham1D ? sobolev_norm(s.eta, p.s) : t_weighted_norm(s, p.s, p.mu);
    const double q1 = m == ModelKind::Whitham1D ? sobolev_norm(u.eta, p.s) : t_weighted_norm(u, p.s, p.mu);
    const double drift = std::abs(q1 - q0) / q0;
    const bool ok = tr.steps == 1000 && mass < tol::mass_drift && drift < tol::norm_drift;
    pass = pass && ok;
    detail += (detail.empty() ? "" : "; ") + to_string(m) + " mass " + num(mass) + " norm " + num(drift);
  }
  return {pass, detail};
}

// 8. Gronwall bound with the pinned c; the same bound with c/2 must break.
Outcome gronwall(const Constants& k) {
  bool pass = true;
  std::string detail;
  for (ModelKind m : {ModelKind::Whitham1D, ModelKind::WB1D, ModelKind::WB2D}) {
    const double c = k.gronwall_c(m);
    double worst = 0.0, half = 0.0, vform = 0.0;
    for (const auto& r : gronwall_ensemble(m, 10, 0)) {
      const Trajectory tr = evolve(r.initial, r.params, r.step);
      const GronwallResult full = gronwall_check(tr, r.params, c, k);
      worst = std::max(worst, full.max_ratio);
      vform = std::max(vform, full.max_ratio_vnorm);
      half = std::max(half, gronwall_check(tr, r.params, 0.5 * c, k).max_ratio);
    }
    const bool ok = c > 0.0 && worst <= tol::gronwall && vform <= tol::gronwall && half > tol::gronwall;
    pass = pass && ok;
    detail += (detail.empty() ? "" : "; ") + to_string(m) + " c=" + num(c) + " max " + num(worst) + " c/2 " +
              num(half) + (m == ModelKind::Whitham1D ? "" : " V-form " + num(vform));
  }
  return {pass, detail};
}

// 9. h0 V^2 <= C1 E <= C1 C2 H V^2.
Outcome coercivity(const Constants& k) {
  const CoercivityResult r = coercivity_sweep({1e-3, 1e-2, 0.1, 1.0}, 12, 0);
  const bool pass = r.samples > 0 && r.max_lower <= k.coercive_c1 && r.max_upper <= k.coercive_c2;
  return {pass, num(r.samples) + " states, h0 V^2 / E max " + num(r.max_lower) + " <= C1 " + num(k.coercive_c1) +
                    ", E / (H V^2) max " + num(r.max_upper) + " <= C2 " + num(k.coercive_c2)};
}

// 10. Commutator bound ratios, uniform in mu.
Outcome commutator(const Constants& k) {
  bool pass = true;
  std::string detail;
  for (int d : {1, 2}) {
    const CommutatorReport r = commutator_probe(standard_commutator(d, 0));
    const bool ok = std::isfinite(r.max_tilbert) && std::isfinite(r.max_inv_tilbert) &&
                    r.max_tilbert <= k.commutator_tilbert && r.max_inv_tilbert <= k.commutator_inv_tilbert &&
                    r.spread_tilbert < tol::commutator_spread && r.spread_inv_tilbert < tol::commutator_spread;
    pass = pass && ok;
    detail += (detail.empty() ? "" : "; ") + std::to_string(d) + "d sqrtT max " + num(r.max_tilbert) + " spread " +
              num(r.spread_tilbert) + ", invsqrtT max " + num(r.max_inv_tilbert) + " spread " +
              num(r.spread_inv_tilbert);
  }
  return {pass, detail + " (pinned " + num(k.commutator_tilbert) + ", " + num(k.commutator_inv_tilbert) + ")"};
}

// 11. Lifespan sweep on the 4 x 3 (eps, mu) grid.
Outcome lifespan(const Constants& k) {
  bool pass = true;
  std::string detail;
  for (ModelKind m : {ModelKind::Whitham1D, ModelKind::WB1D, ModelKind::WB2D}) {
    LifespanConfig c = standard_lifespan(m);
    c.monotone_tolerance = tol::lifespan_monotone;
    const LifespanReport r = lifespan_sweep(c);
    double a = std::nan("");
    for (const auto& [mu, f] : r.eps_fits)
      if (mu == 1.0) a = -f.exponent;
    const double kappa = k.kappa(m);
    const bool ok = r.monotone_eps && r.monotone_mu && kappa > 0.0 && r.min_theorem_ratio >= kappa &&
                    a >= tol::lifespan_exponent;
    pass = pass && ok;
    detail += (detail.empty() ? "" : "; ") + to_string(m) + " monotone " + (r.monotone_eps && r.monotone_mu ? "yes" : "no") +
              ", min t/T_thm " + num(r.min_theorem_ratio) + " >= kappa " + num(kappa) + ", a(mu=1) " + num(a);
  }
  return {pass, detail};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// 12. Same command, same config and seed: identical CSV bytes.
Outcome determinism() {
  struct Cmd {
    std::string sub;
    std::string yaml;
  };
  const std::vector<Cmd> cmds{
      {"simulate", "model:\n  name: wb1d\n  eps: 0.3\ngrid:\n  n: 256\n  length: 100.53096491487338\ndata:\n  spec: "
                   "potential_gradient(seed, 0, 2, 0.5)\nstep:\n  dt: 0.02\n  t_end: 4\n  snapshot_every: 100\n"},
      {"decay-test", "decay:\n  n: 2048\n  length: 200\n  t_min: 20\n  t_max: 300\n  samples: 8\n"},
      {"scaling-test", "scaling:\n  fields: 2\n"},
      {"strichartz-test", "strichartz:\n  mus: [0.1, 1]\n  lambdas: [2, 4]\n"},
      {"commutator-probe", "commutator:\n  n: 256\n  bands: [1, 2]\n  per_band: 1\n"},
      {"gronwall-check", "gronwall:\n  models: [whitham1d, wb1d]\n  count: 2\n"},
      {"refined-check", "refined:\n  count: 2\n"},
      {"lifespan-sweep", "model:\n  name: whitham1d\ngrid:\n  n: 512\n  length: 201.06192982974676\ndata:\n  spec: "
                         "raised_cosine(0.0625, 4)\nstep:\n  dt: 0.05\n  t_end: 100\nlifespan:\n  eps: [0.4, 0.8]\n  "
                         "mus: [0.3, 1]\n"},
      {"norms", "model:\n  name: wb1d\n  eps: 0.3\ngrid:\n  n: 256\ndata:\n  spec: potential_gradient(seed, 0, 2, 0.5)\n"},
  };
  const fs::path root = fs::temp_directory_path() / "wblab_acceptance_determinism";
  fs::remove_all(root);
  int files = 0;
  std::vector<std::string> bad;
  std::ostringstream log;
  for (const auto& c : cmds) {
    for (const char* rep : {"a", "b"}) {
      RunConfig cfg = parse_config_text(c.yaml + "run:\n  seed: 11\n");
      cfg.out = (root / rep / c.sub).string();
      finalize_config(cfg);
      if (run(c.sub, cfg, log) == 2) bad.push_back(c.sub + " (error)");
    }
    for (const auto& e : fs::recursive_directory_iterator(root / "a" / c.sub)) {
      if (e.path().extension() != ".csv") continue;
      const fs::path other = root / "b" / fs::relative(e.path(), root / "a");
      ++files;
      if (!fs::exists(other) || slurp(e.path()) != slurp(other)) bad.push_back(fs::relative(e.path(), root / "a").string());
    }
  }
  std::string detail = std::to_string(cmds.size()) + " commands, " + std::to_string(files) + " CSV files compared";
  for (const auto& b : bad) detail += "; differs: " + b;
  return {bad.empty() && files > 0, detail};
}

struct Criterion {
  int id;
  std::string name;
  std::function<Outcome(const Constants&)> fn;
  bool uses_constants = false;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "unitarity", [](const Constants&) { return unitarity(); }},
      {2, "scaling identity", [](const Constants&) { return scaling(); }},
      {3, "dispersive decay", [](const Constants&) { return decay(); }},
      {4, "frequency-localized Strichartz", strichartz, true},
      {5, "diagonalization", [](const Constants&) { return diagonalization(); }},
      {6, "integrator order", [](const Constants&) { return rk4_order(); }},
      {7, "conservation", [](const Constants&) { return conservation(); }},
      {8, "Gronwall consistency", gronwall, true},
      {9, "energy coercivity", coercivity, true},
      {10, "commutator probes", commutator, true},
      {11, "lifespan scaling", lifespan, true},
      {12, "determinism", [](const Constants&) { return determinism(); }},
  };
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));

  Constants k;
  std::string constants_error;
  try {
    k = pinned();
  } catch (const Error& e) {
    constants_error = e.what();
  }

  int failed = 0;
  for (const auto& c : all) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.uses_constants && !constants_error.empty() ? Outcome{false, "no pinned constants: " + constants_error}
                                                        : c.fn(k);
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s [%2d] %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
