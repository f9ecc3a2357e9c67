#include <cmath>

#include "doctest.h"
#include "wblab/error.hpp"
#include "wblab/fit.hpp"
#include "wblab/initial_data.hpp"
#include "wblab/integrator.hpp"

using namespace wblab;

namespace {

ModelParams params(ModelKind k, double eps, double mu) {
  ModelParams p;
  p.model = k;
  p.eps = eps;
  p.mu = mu;
  p.s = k == ModelKind::WB2D ? 2.3 : 1.7;
  p.h0 = 0.3;
  return p;
}

double diff(const Field& a, const Field& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

State run(const State& s, const ModelParams& p, double dt, int steps) {
  State u = s;
  for (int i = 0; i < steps; ++i) u = if_rk4_step(u, dt, p);
  return u;
}

}  // namespace

TEST_CASE("log-log fit recovers a power law") {
  std::vector<double> x, y;
  for (int i = 1; i <= 8; ++i) {
    x.push_back(i);
    y.push_back(3.0 * std::pow(i, -1.5));
  }
  const FitResult f = fit_loglog(x, y);
  CHECK(f.exponent == doctest::Approx(-1.5));
  CHECK(std::exp(f.intercept) == doctest::Approx(3.0));
  CHECK(f.r_squared == doctest::Approx(1.0));
  CHECK(f.n_points == 8);
  CHECK_THROWS_AS(fit_loglog({1, 2, 3}, {1, 2, 3}), Error);
  CHECK_THROWS_AS(fit_loglog({1, 2, 3, 4}, {1, -2, 3, 4}), Error);
  const LineFit l = fit_line({0, 1, 2}, {1, 3, 5});
  CHECK(l.slope == doctest::Approx(2.0));
  CHECK(l.intercept == doctest::Approx(1.0));
}

TEST_CASE("linear step is exact") {
  const Grid g(1, 128, 8.0 * M_PI);
  const ModelParams p = params(ModelKind::Whitham1D, 0.0, 1.0);
  State s(g);
  s.eta = random_band(g, 0.0, 3.0, 1, 1.0);
  const State a = run(s, p, 0.5, 4);
  const State b = run(s, p, 2.0, 1);
  CHECK(diff(a.eta, b.eta) < 1e-12);
  CHECK(a.t == doctest::Approx(2.0));
}

TEST_CASE("RK4 order on Whitham") {
  const Grid g(1, 256, 16.0 * M_PI);
  const ModelParams p = params(ModelKind::Whitham1D, 0.5, 1.0);
  State s(g);
  s.eta = gaussian(g, 1.0, 3.0);
  const double T = 2.0;
  const State ref = run(s, p, T / 1024, 1024);
  std::vector<double> dts, errs;
  for (int n : {32, 64, 128}) {
    dts.push_back(T / n);
    errs.push_back(diff(run(s, p, T / n, n).eta, ref.eta));
  }
  const double slope = std::log(errs[0] / errs[2]) / std::log(dts[0] / dts[2]);
  CHECK(slope > 3.8);
  CHECK(slope < 4.2);
}

TEST_CASE("diagonal step agrees with the physical step") {
  const Grid g(1, 128, 16.0 * M_PI);
  const ModelParams p = params(ModelKind::WB1D, 0.3, 0.5);
  const State s = make_initial_state(g, p, DataSpec::parse("potential_gradient(2, 0.2, 1.5, 0.4)"));
  const State a = if_rk4_step(s, 0.05, p);
  const State b = reconstruct(if_rk4_step(diagonalize(s, p.mu), 0.05, p));
  CHECK(diff(a.eta, b.eta) < 1e-10);
  CHECK(diff(a.v[0], b.v[0]) < 1e-10);
}

TEST_CASE("evolve records and terminates") {
  const Grid g(1, 256, 32.0 * M_PI);
  const ModelParams p = params(ModelKind::Whitham1D, 0.2, 1.0);
  State s(g);
  s.eta = gaussian(g, 1.0, 2.0);
  StepConfig c;
  c.dt = 0.05;
  c.t_end = 2.0;
  c.record_every = 4;
  c.snapshot_every = 20;
  const Trajectory tr = evolve(s, p, c);
  CHECK(tr.termination.kind == TerminationKind::HorizonReached);
  CHECK(tr.times.front() == 0.0);
  CHECK(tr.times.back() == doctest::Approx(2.0));
  CHECK(tr.records.size() == tr.times.size());
  CHECK(tr.snapshots.size() >= 2);
  CHECK(tr.monitored == NormKind::Hs);
  // Mass is conserved.
  CHECK(std::abs(tr.records.back().mass - tr.records.front().mass) < 1e-10);
}

TEST_CASE("doubling time interpolates in log-norm") {
  Trajectory tr;
  tr.monitored = NormKind::Hs;
  for (double t : {0.0, 1.0, 2.0}) {
    NormReport r;
    r.hs = std::exp(t * std::log(3.0));
    tr.times.push_back(t);
    tr.records.push_back(r);
  }
  const auto td = doubling_time(tr, NormKind::Hs);
  REQUIRE(td);
  CHECK(*td == doctest::Approx(std::log(2.0) / std::log(3.0)));
  CHECK_FALSE(doubling_time(tr, NormKind::Hs, 10.0));
}

TEST_CASE("evolve stops on doubling") {
  const Grid g(1, 512, 64.0 * M_PI);
  const ModelParams p = params(ModelKind::Whitham1D, 0.8, 1.0);
  State s(g);
  s.eta = cosine(g, 0.0625, 2.0);
  StepConfig c;
  c.dt = 0.05;
  c.t_end = 200.0;
  const Trajectory tr = evolve(s, p, c);
  CHECK(tr.termination.kind == TerminationKind::Doubled);
  CHECK(tr.termination.time < 200.0);
}

TEST_CASE("evolve refuses bad initial data") {
  const Grid g(1, 64, 2.0 * M_PI);
  ModelParams p = params(ModelKind::WB1D, 0.5, 1.0);
  State s = zero_state(g, p);
  s.eta = cosine(g, 1.0, 3.0);
  StepConfig c;
  CHECK_THROWS_AS(evolve(s, p, c), Error);
  c.dt = -1.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("step config and norm kinds") {
  CHECK(parse_norm_kind("hs") == NormKind::Hs);
  CHECK_THROWS_AS(parse_norm_kind("foo"), ConfigError);
  CHECK(default_norm_kind(params(ModelKind::WB1D, 0.1, 1.0)) == NormKind::Vsmu);
  CHECK(to_string(TerminationKind::Doubled) == "doubled");
}
