#include <cmath>

#include "doctest.h"
#include "wblab/error.hpp"
#include "wblab/functionals.hpp"
#include "wblab/initial_data.hpp"
#include "wblab/models.hpp"
#include "wblab/symbols.hpp"

using namespace wblab;

namespace {

double field_diff(const Field& a, const Field& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

ModelParams params(ModelKind k, double eps, double mu) {
  ModelParams p;
  p.model = k;
  p.eps = eps;
  p.mu = mu;
  p.s = k == ModelKind::WB2D ? 2.3 : 1.7;
  p.h0 = 0.3;
  return p;
}

}  // namespace

TEST_CASE("model names round trip") {
  for (auto k : {ModelKind::Whitham1D, ModelKind::WB1D, ModelKind::WB2D}) CHECK(parse_model(to_string(k)) == k);
  CHECK(model_dim(ModelKind::WB2D) == 2);
  CHECK_THROWS_AS(parse_model("kdv"), ConfigError);
}

TEST_CASE("parameter validation") {
  ModelParams p = params(ModelKind::Whitham1D, 0.1, 1.0);
  CHECK_NOTHROW(p.validate());
  CHECK(p.regularity_threshold() == doctest::Approx(13.0 / 8.0));
  p.eps = 0.0;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  CHECK_NOTHROW(p.validate(false, true));
  p.eps = 0.1;
  p.s = 1.5;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  CHECK_NOTHROW(p.validate(true));
  ModelParams w = params(ModelKind::WB2D, 0.1, 1.0);
  CHECK(w.regularity_threshold() == doctest::Approx(2.25));
  w.mu = 1.5;
  CHECK_THROWS_AS(w.validate(), ConfigError);
}

TEST_CASE("Whitham right side on a cosine") {
  // Linear part: -sqrt(T_mu(k)) d_x cos(kx) = k sqrt(T_mu(k)) sin(kx); nonlinear: eps a^2 k sin(2kx) / 2.
  const Grid g(1, 64, 2.0 * M_PI);
  const double k = 3.0, a = 0.4, eps = 0.25, mu = 0.5;
  const ModelParams p = params(ModelKind::Whitham1D, eps, mu);
  const Field r = whitham_rhs(cosine(g, k, a), p);
  Field want(g);
  for (int i = 0; i < g.n(); ++i) {
    const double x = g.x(i);
    want[i] = a * k * sqrt_t_mu(k, mu) * std::sin(k * x) + 0.5 * eps * a * a * k * std::sin(2 * k * x);
  }
  CHECK(field_diff(r, want) < 1e-12);
}

TEST_CASE("WB right side linear part") {
  // eta_t = -div v, v_t = -T_mu grad eta at eps = 0.
  const Grid g(1, 64, 2.0 * M_PI);
  ModelParams p = params(ModelKind::WB1D, 0.0, 1.0);
  State s = zero_state(g, p);
  s.eta = cosine(g, 2.0, 1.0);
  s.v[0] = cosine(g, 1.0, 0.5);
  const State r = wb_rhs(s, p);
  Field want_eta(g), want_v(g);
  for (int i = 0; i < g.n(); ++i) {
    const double x = g.x(i);
    want_eta[i] = 0.5 * std::sin(x);
    want_v[i] = 2.0 * t_mu(2.0, 1.0) * std::sin(2.0 * x);
  }
  CHECK(field_diff(r.eta, want_eta) < 1e-12);
  CHECK(field_diff(r.v[0], want_v) < 1e-12);
}

TEST_CASE("curl-free projection") {
  const Grid g(2, 32, 2.0 * M_PI);
  std::vector<Field> v{Field(g), Field(g)};
  for (int i = 0; i < g.n(); ++i)
    for (int j = 0; j < g.n(); ++j) {
      // grad(sin x cos y) plus a rotational part (-d_y psi, d_x psi) with psi = cos(2y).
      const double x = g.x(i), y = g.x(j);
      v[0][i * g.n() + j] = std::cos(x) * std::cos(y) + 2.0 * std::sin(2 * y);
      v[1][i * g.n() + j] = -std::sin(x) * std::sin(y);
    }
  CHECK(curl_residual(v) > 1.0);
  CHECK_THROWS_AS(require_curl_free(v), CurlError);
  const auto pv = project_curl_free(v);
  CHECK(curl_residual(pv) < 1e-12);
  for (int i = 0; i < g.n(); ++i)
    for (int j = 0; j < g.n(); ++j)
      CHECK(pv[0][i * g.n() + j] == doctest::Approx(std::cos(g.x(i)) * std::cos(g.x(j))).epsilon(1e-10));
}

TEST_CASE("WB2D rejects rotational velocity") {
  const Grid g(2, 16, 2.0 * M_PI);
  const ModelParams p = params(ModelKind::WB2D, 0.1, 1.0);
  State s = zero_state(g, p);
  for (int i = 0; i < g.n(); ++i)
    for (int j = 0; j < g.n(); ++j) s.v[0][i * g.n() + j] = std::sin(g.x(j));
  CHECK_THROWS_AS(wb_rhs(s, p), CurlError);
}

TEST_CASE("diagonal variables round trip and right-going data") {
  const Grid g(1, 128, 16.0 * M_PI);
  const ModelParams p = params(ModelKind::WB1D, 0.2, 0.3);
  const State s = make_initial_state(g, p, DataSpec::parse("potential_gradient(3, 0.2, 2, 0.5)"));
  const State back = reconstruct(diagonalize(s, p.mu));
  CHECK(field_diff(back.eta, s.eta) < 1e-12);
  CHECK(field_diff(back.v[0], s.v[0]) < 1e-12);

  // v = sqrt(T_mu(D)) eta is right-going: u+^ vanishes on xi > 0 and u-^ on xi < 0.
  State r = zero_state(g, p);
  r.eta = random_band(g, 0.2, 2.0, 8, 1.0);
  r.v[0] = apply_multiplier(r.eta, SymbolSpec::sqrt_tmu(p.mu));
  const DiagState d = diagonalize(r, p.mu);
  const FullSpectrum up = forward(d.u_plus), um = forward(d.u_minus);
  double pos = 0.0, neg = 0.0, total = 0.0;
  for (int i = 0; i < g.n(); ++i) {
    const int k = g.signed_index(i);
    if (k > 0) pos = std::max(pos, std::abs(up[i]));
    if (k < 0) neg = std::max(neg, std::abs(um[i]));
    total = std::max(total, std::abs(up[i]) + std::abs(um[i]));
  }
  CHECK(pos < 1e-14 * total);
  CHECK(neg < 1e-14 * total);
}

TEST_CASE("propagator is a unitary phase") {
  const Grid g(1, 256, 20.0 * M_PI);
  const Field f = random_band(g, 0.0, 4.0, 2, 1.0);
  const ComplexField u = linear_propagate(f, 7.5, 0.1, 1);
  CHECK(lp_norm(u, 2.0) == doctest::Approx(lp_norm(f, 2.0)).epsilon(1e-13));
  const ComplexField back = linear_propagate(u, 7.5, 0.1, -1);
  double m = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) m = std::max(m, std::abs(back[i] - f[i]));
  CHECK(m < 1e-13);
  // Long waves move at speed one; short ones slower.
  const Propagator pr(g, 1.0);
  CHECK(pr.max_group_speed() <= 1.0 + 1e-12);
}

TEST_CASE("model propagate matches the exact linear flow") {
  const Grid g(1, 64, 4.0 * M_PI);
  const ModelParams p = params(ModelKind::WB1D, 0.0, 1.0);
  const Model m(g, p);
  State s = zero_state(g, p);
  s.eta = cosine(g, 1.0, 1.0);
  auto u = m.to_spectra(s);
  const double t = 2.0, w = std::sqrt(t_mu(1.0, 1.0));
  m.propagate(u, t);
  const State r = m.to_state(u, t);
  // Standing wave: eta = cos(x) cos(w t).
  CHECK(field_diff(r.eta, cosine(g, 1.0, std::cos(w * t))) < 1e-13);
}

TEST_CASE("functionals on simple states") {
  const Grid g(1, 64, 2.0 * M_PI);
  const Field c = cosine(g, 2.0, 1.0);
  // ||cos 2x||_{H^s}^2 = pi <2>^{2s}.
  CHECK(sobolev_norm(c, 1.0) == doctest::Approx(std::sqrt(M_PI * 5.0)));
  CHECK(sobolev_norm(c, 0.0) == doctest::Approx(lp_norm(c, 2.0)));

  ModelParams p = params(ModelKind::WB1D, 0.5, 1.0);
  State s = zero_state(g, p);
  s.eta = cosine(g, 2.0, 0.4);
  s.v[0] = cosine(g, 1.0, 0.2);
  CHECK(h_quantity(s, 0.5) == doctest::Approx(1.0 + 0.5 * 0.6));
  CHECK(h_min(s, 0.5) == doctest::Approx(0.8));
  const double vn = v_mu_norm(s, 0.0, 1.0);
  // ||eta||^2 + ||v||^2 + || |D|^{1/2} v ||^2 = pi (0.16 + 0.04 + 0.04).
  CHECK(vn == doctest::Approx(std::sqrt(M_PI * 0.24)));
  const double tw = t_weighted_norm(s, 0.0, 1.0);
  CHECK(tw == doctest::Approx(std::sqrt(M_PI * (0.16 + 0.04 / t_mu(1.0, 1.0)))));
  const double e = energy_wb(s, p);
  CHECK(e > 0.0);
  s.eta = cosine(g, 2.0, 3.0);
  CHECK_THROWS_AS(energy_wb(s, p), NonCoerciveError);
}

TEST_CASE("P quantity") {
  const Grid g(1, 128, 2.0 * M_PI);
  const ModelParams p = params(ModelKind::Whitham1D, 0.1, 1.0);
  State s(g);
  s.eta = cosine(g, 3.0, 0.5);
  CHECK(p_quantity(s, p) == doctest::Approx(1.5).epsilon(1e-3));
}

TEST_CASE("initial data families") {
  const Grid g(1, 256, 64.0 * M_PI);
  CHECK_THROWS_AS(DataSpec::parse("cosine(1)"), ConfigError);
  CHECK_THROWS_AS(DataSpec::parse("blob(1, 2)"), ConfigError);
  CHECK_THROWS_AS(DataSpec::parse("gaussian(1, x)"), ConfigError);
  CHECK(DataSpec::parse(" gaussian( 1 , 2 ) ").str() == "gaussian(1, 2)");
  CHECK_THROWS_AS(cosine(g, 0.3, 1.0), ConfigError);
  const Field r = random_band(g, 0.5, 1.0, 9, 0.7);
  CHECK(r.max_abs() == doctest::Approx(0.7));
  CHECK(random_band(g, 0.5, 1.0, 9, 0.7).values == r.values);

  ModelParams p = params(ModelKind::WB1D, 0.8, 1.0);
  const State s = make_initial_state(g, p, DataSpec::parse("raised_cosine(0.0625, 4)"));
  CHECK(s.eta.min() >= -1e-14);
  CHECK(s.eta.max_abs() == doctest::Approx(4.0));
  CHECK(s.v[0].max_abs() == doctest::Approx(2.0));
  CHECK(h_min(s, p.eps) >= 1.0 - 1e-12);

  const Grid g2(2, 32, 16.0 * M_PI);
  const ModelParams p2 = params(ModelKind::WB2D, 0.2, 1.0);
  const State s2 = make_initial_state(g2, p2, DataSpec::parse("potential_gradient(4, 0.25, 1.5, 0.5)"));
  CHECK(curl_residual(s2.v) < 1e-10 * std::max(1.0, gradient_l2(s2.v)));
}
