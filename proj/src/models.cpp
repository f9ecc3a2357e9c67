#include "wblab/models.hpp"

#include <cmath>
#include <sstream>

#include "wblab/error.hpp"
#include "wblab/symbols.hpp"

namespace wblab {

std::string to_string(ModelKind k) {
  switch (k) {
    case ModelKind::Whitham1D:
      return "whitham1d";
    case ModelKind::WB1D:
      return "wb1d";
    case ModelKind::WB2D:
      return "wb2d";
  }
  return "unknown";
}

ModelKind parse_model(std::string_view name) {
  if (name == "whitham1d" || name == "Whitham1D") return ModelKind::Whitham1D;
  if (name == "wb1d" || name == "WB1D") return ModelKind::WB1D;
  if (name == "wb2d" || name == "WB2D") return ModelKind::WB2D;
  throw ConfigError("model: unknown model '" + std::string(name) + "' (expected whitham1d, wb1d, wb2d)");
}

int model_dim(ModelKind k) { return k == ModelKind::WB2D ? 2 : 1; }

double ModelParams::regularity_threshold() const {
  if (model == ModelKind::Whitham1D) return 13.0 / 8.0;
  return 1.0 + 5.0 * dim() / 8.0;
}

void ModelParams::validate(bool allow_low_regularity, bool allow_linear) const {
  const bool eps_ok = allow_linear ? (eps >= 0.0 && eps <= 1.0) : (eps > 0.0 && eps <= 1.0);
  if (!eps_ok) {
    std::ostringstream os;
    os << "eps: must lie in (0, 1], got " << eps;
    throw ConfigError(os.str());
  }
  if (!(mu > 0.0 && mu <= 1.0)) {
    std::ostringstream os;
    os << "mu: must lie in (0, 1], got " << mu;
    throw ConfigError(os.str());
  }
  if (!(h0 > 0.0 && h0 < 1.0)) {
    std::ostringstream os;
    os << "h0: must lie in (0, 1), got " << h0;
    throw ConfigError(os.str());
  }
  if (!std::isfinite(s)) throw ConfigError("s: must be finite");
  if (!allow_low_regularity && !(s > regularity_threshold())) {
    std::ostringstream os;
    os << "s: must exceed " << regularity_threshold() << " for " << to_string(model) << ", got " << s
       << " (set allow_low_regularity = true to override)";
    throw ConfigError(os.str());
  }
}

bool State::all_finite() const {
  if (!eta.all_finite()) return false;
  for (const auto& c : v)
    if (!c.all_finite()) return false;
  return true;
}

double State::linf_v() const {
  if (v.empty()) return 0.0;
  double m = 0.0;
  for (std::size_t i = 0; i < eta.size(); ++i) {
    double s = 0.0;
    for (const auto& c : v) s += c[i] * c[i];
    m = std::max(m, std::sqrt(s));
  }
  return m;
}

State zero_state(const Grid& g, const ModelParams& p) {
  State s(g);
  if (p.has_velocity()) s.v.assign(g.dim(), Field(g));
  return s;
}

Wavevector model_wavevector(const Wavevector& w) {
  Wavevector e = w;
  for (int j = 0; j < 2; ++j) {
    if (w.nyquist[j]) {
      e.xi[j] = 0.0;
      e.k[j] = 0;
      e.nyquist[j] = false;
    }
  }
  return e;
}

namespace {

constexpr cplx I{0.0, 1.0};

void check_dims(const Grid& g, const ModelParams& p) {
  if (g.dim() != p.dim())
    throw Error("model " + to_string(p.model) + " needs a " + std::to_string(p.dim()) + "D grid");
}

}  // namespace

Model::Model(const Grid& g, const ModelParams& p) : grid_(g), params_(p) {
  check_dims(g, p);
  const std::size_t m = g.spectral_size();
  kx_.resize(m);
  ky_.resize(m);
  kabs_.resize(m);
  tmu_.resize(m);
  band_.resize(m);
  for_each_mode(g, [&](std::size_t idx, const Wavevector& w) {
    const Wavevector e = model_wavevector(w);
    kx_[idx] = e.xi[0];
    ky_[idx] = e.xi[1];
    kabs_[idx] = e.abs();
    tmu_[idx] = t_mu(kabs_[idx], p.mu);
    band_[idx] = in_dealias_band(g, w);
  });
}

Model::Spectra Model::to_spectra(const State& s) const {
  Spectra u;
  u.reserve(components());
  u.push_back(forward(s.eta));
  if (params_.has_velocity()) {
    if (static_cast<int>(s.v.size()) != grid_.dim()) throw Error("state velocity has the wrong number of components");
    for (const auto& c : s.v) u.push_back(forward(c));
  }
  return u;
}

State Model::to_state(const Spectra& u, double t) const {
  State s(inverse(u[0]), {}, t);
  for (std::size_t j = 1; j < u.size(); ++j) s.v.push_back(inverse(u[j]));
  return s;
}

Model::Spectra Model::linear(const Spectra& u) const {
  Spectra out(u.size(), SpectralField(grid_));
  const std::size_t m = grid_.spectral_size();
  if (!params_.has_velocity()) {
    for (std::size_t i = 0; i < m; ++i) out[0][i] = -I * kx_[i] * std::sqrt(tmu_[i]) * u[0][i];
    return out;
  }
  const bool two = grid_.dim() == 2;
  for (std::size_t i = 0; i < m; ++i) {
    cplx div = kx_[i] * u[1][i];
    if (two) div += ky_[i] * u[2][i];
    out[0][i] = -I * div;
    out[1][i] = -I * kx_[i] * tmu_[i] * u[0][i];
    if (two) out[2][i] = -I * ky_[i] * tmu_[i] * u[0][i];
  }
  return out;
}

Model::Spectra Model::nonlinear(const Spectra& u) const {
  Spectra out(u.size(), SpectralField(grid_));
  const std::size_t m = grid_.spectral_size();
  const double eps = params_.eps;
  if (eps == 0.0) return out;
  const Field eta = inverse(u[0]);
  if (!params_.has_velocity()) {
    Field sq(grid_);
    for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = eta[i] * eta[i];
    const SpectralField s = forward(sq);
    for (std::size_t i = 0; i < m; ++i)
      out[0][i] = band_[i] ? -0.5 * eps * I * kx_[i] * s[i] : cplx{};
    return out;
  }
  const int d = grid_.dim();
  std::vector<Field> v;
  for (int j = 0; j < d; ++j) v.push_back(inverse(u[1 + j]));
  Field q(grid_);
  std::vector<SpectralField> flux;
  for (int j = 0; j < d; ++j) {
    Field f(grid_);
    for (std::size_t i = 0; i < f.size(); ++i) {
      f[i] = eta[i] * v[j][i];
      q[i] += v[j][i] * v[j][i];
    }
    flux.push_back(forward(f));
  }
  const SpectralField qs = forward(q);
  for (std::size_t i = 0; i < m; ++i) {
    if (!band_[i]) continue;
    cplx div = kx_[i] * flux[0][i];
    if (d == 2) div += ky_[i] * flux[1][i];
    out[0][i] = -eps * I * div;
    out[1][i] = -0.5 * eps * I * kx_[i] * qs[i];
    if (d == 2) out[2][i] = -0.5 * eps * I * ky_[i] * qs[i];
  }
  return out;
}

void Model::propagate(Spectra& u, double dt) const {
  if (dt == 0.0) return;
  const std::size_t m = grid_.spectral_size();
  if (!params_.has_velocity()) {
    for (std::size_t i = 0; i < m; ++i) u[0][i] *= std::exp(-I * (kx_[i] * std::sqrt(tmu_[i]) * dt));
    return;
  }
  const bool two = grid_.dim() == 2;
  for (std::size_t i = 0; i < m; ++i) {
    const double a = kabs_[i];
    if (a == 0.0) continue;
    const double st = std::sqrt(tmu_[i]);
    const double om = a * st * dt;
    const double c = std::cos(om);
    const double s = std::sin(om);
    const double nx = kx_[i] / a;
    const double ny = ky_[i] / a;
    // Longitudinal velocity w = (xi . v^)/|xi|; the transverse part is stationary.
    const cplx w = nx * u[1][i] + (two ? ny * u[2][i] : cplx{});
    const cplx e = u[0][i];
    const cplx e1 = c * e - I * (s / st) * w;
    const cplx w1 = c * w - I * (s * st) * e;
    u[0][i] = e1;
    u[1][i] += nx * (w1 - w);
    if (two) u[2][i] += ny * (w1 - w);
  }
}

void Model::project(Spectra& u) const {
  if (!params_.has_velocity() || grid_.dim() != 2) return;
  const std::size_t m = grid_.spectral_size();
  for (std::size_t i = 0; i < m; ++i) {
    const double a2 = kx_[i] * kx_[i] + ky_[i] * ky_[i];
    if (a2 == 0.0) continue;
    const cplx w = (kx_[i] * u[1][i] + ky_[i] * u[2][i]) / a2;
    u[1][i] = kx_[i] * w;
    u[2][i] = ky_[i] * w;
  }
}

namespace {

State add(const Model::Spectra& a, const Model::Spectra& b, const Model& m, double t) {
  Model::Spectra s = a;
  for (std::size_t j = 0; j < s.size(); ++j) s[j] += b[j];
  return m.to_state(s, t);
}

}  // namespace

Field whitham_rhs(const Field& eta, const ModelParams& p) {
  if (p.model != ModelKind::Whitham1D) throw Error("whitham_rhs: model must be whitham1d");
  const Model m(eta.grid, p);
  State s(eta, {});
  const auto u = m.to_spectra(s);
  return add(m.linear(u), m.nonlinear(u), m, 0.0).eta;
}

State wb_rhs(const State& state, const ModelParams& p) {
  if (!p.has_velocity()) throw Error("wb_rhs: model must be wb1d or wb2d");
  if (p.model == ModelKind::WB2D) require_curl_free(state.v);
  const Model m(state.grid(), p);
  const auto u = m.to_spectra(state);
  return add(m.linear(u), m.nonlinear(u), m, state.t);
}

namespace {

// d/dx sqrt(x tanh x) for x >= 0.
double m_prime(double x) {
  if (x < 1e-8) return 1.0;
  const double t = std::tanh(x);
  const double sech2 = 1.0 - t * t;
  return (t + x * sech2) / (2.0 * std::sqrt(x * t));
}

}  // namespace

Propagator::Propagator(const Grid& g, double mu) : grid_(g), mu_(mu), phase_(g.size()) {
  if (!(mu > 0.0 && mu <= 1.0)) throw Error("propagator: mu must lie in (0, 1]");
  const SymbolSpec m = SymbolSpec::m(g.dim(), mu);
  for_each_full_mode(g, [&](std::size_t idx, const Wavevector& w) { phase_[idx] = m(w).real(); });
}

void Propagator::apply(FullSpectrum& fs, double t, int sign) const {
  if (t == 0.0) return;
  const double st = sign >= 0 ? t : -t;
  for (std::size_t i = 0; i < fs.size(); ++i) fs[i] *= std::polar(1.0, st * phase_[i]);
}

ComplexField Propagator::apply(const ComplexField& f, double t, int sign) const {
  if (!(f.grid == grid_)) throw Error("propagator: field lives on a different grid");
  if (t == 0.0) return f;
  FullSpectrum fs = forward(f);
  apply(fs, t, sign);
  return inverse(fs);
}

double Propagator::max_group_speed() const {
  // The speed decreases in |xi|, so the smallest nonzero lattice frequency bounds it.
  return m_prime(std::sqrt(mu_) * grid_.dk());
}

ComplexField linear_propagate(const ComplexField& f, double t, double mu, int sign) {
  return Propagator(f.grid, mu).apply(f, t, sign);
}

ComplexField linear_propagate(const Field& f, double t, double mu, int sign) {
  return linear_propagate(ComplexField(f), t, mu, sign);
}

namespace {

struct FullOps {
  std::vector<double> kx, ky, kabs, tmu;
};

FullOps full_ops(const Grid& g, double mu) {
  FullOps o;
  o.kx.resize(g.size());
  o.ky.resize(g.size());
  o.kabs.resize(g.size());
  o.tmu.resize(g.size());
  for_each_full_mode(g, [&](std::size_t idx, const Wavevector& w) {
    const Wavevector e = model_wavevector(w);
    o.kx[idx] = e.xi[0];
    o.ky[idx] = e.xi[1];
    o.kabs[idx] = e.abs();
    o.tmu[idx] = t_mu(o.kabs[idx], mu);
  });
  return o;
}

}  // namespace

DiagState diagonalize(const State& state, double mu) {
  const Grid& g = state.grid();
  const int d = g.dim();
  if (static_cast<int>(state.v.size()) != d) throw Error("diagonalize: state needs a velocity with d components");
  const FullOps o = full_ops(g, mu);
  const FullSpectrum e = expand(forward(state.eta));
  std::vector<FullSpectrum> v;
  for (const auto& c : state.v) v.push_back(expand(forward(c)));
  DiagState out(g);
  out.mu = mu;
  for (int j = 0; j < d; ++j) out.v_mean[j] = v[j][0].real();
  FullSpectrum up(g), um(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    cplx rv{};
    const double a = o.kabs[i];
    if (a > 0.0) {
      // R . v^ with R_j = -i xi_j / |xi|.
      rv = -I * o.kx[i] / a * v[0][i];
      if (d == 2) rv += -I * o.ky[i] / a * v[1][i];
    }
    const cplx term = I * rv / std::sqrt(o.tmu[i]);
    up[i] = 0.5 * (e[i] - term);
    um[i] = 0.5 * (e[i] + term);
  }
  out.u_plus = inverse(up);
  out.u_minus = inverse(um);
  return out;
}

namespace {

// eta^, v_j^ on the full lattice from (u+, u-), before taking real parts.
void reconstruct_spectra(const DiagState& diag, const FullOps& o, FullSpectrum& e, std::vector<FullSpectrum>& v) {
  const Grid& g = diag.grid();
  const int d = g.dim();
  const FullSpectrum up = forward(diag.u_plus);
  const FullSpectrum um = forward(diag.u_minus);
  v.assign(d, FullSpectrum(g));
  for (std::size_t i = 0; i < g.size(); ++i) {
    e[i] = up[i] + um[i];
    const double a = o.kabs[i];
    if (a == 0.0) continue;
    // -i sqrt(T) R_j (u+ - u-) = -sqrt(T) xi_j / |xi| (u+ - u-).
    const cplx diff = -(up[i] - um[i]) * std::sqrt(o.tmu[i]) / a;
    v[0][i] = o.kx[i] * diff;
    if (d == 2) v[1][i] = o.ky[i] * diff;
  }
  for (int j = 0; j < d; ++j) v[j][0] = diag.v_mean[j];
}

}  // namespace

State reconstruct(const DiagState& diag) {
  const Grid& g = diag.grid();
  const FullOps o = full_ops(g, diag.mu);
  FullSpectrum e(g);
  std::vector<FullSpectrum> v;
  reconstruct_spectra(diag, o, e, v);
  const double im = imaginary_norm(e);
  const double re = l2_norm(e);
  if (im > 1e-8 * re && im > 1e-300) {
    std::ostringstream os;
    os << "reconstruct: eta has imaginary part " << im << " against norm " << re
       << "; (u+, u-) do not come from a real state";
    throw Error(os.str());
  }
  State s(inverse(real_part(e)), {});
  for (auto& c : v) s.v.push_back(inverse(real_part(c)));
  return s;
}

DiagState diag_rhs(const DiagState& diag, const ModelParams& p, bool include_linear) {
  if (!p.has_velocity()) throw Error("diag_rhs: model must be wb1d or wb2d");
  const Grid& g = diag.grid();
  check_dims(g, p);
  const int d = g.dim();
  const FullOps o = full_ops(g, p.mu);
  const FullSpectrum up = forward(diag.u_plus);
  const FullSpectrum um = forward(diag.u_minus);
  FullSpectrum bdiv(g), bq(g);
  if (p.eps != 0.0) {
    const State st = reconstruct(diag);
    Field q(g);
    std::vector<FullSpectrum> flux;
    for (int j = 0; j < d; ++j) {
      Field f(g);
      for (std::size_t i = 0; i < f.size(); ++i) {
        f[i] = st.eta[i] * st.v[j][i];
        q[i] += st.v[j][i] * st.v[j][i];
      }
      auto sf = forward(f);
      dealias_in_place(sf);
      flux.push_back(expand(sf));
    }
    auto qs = forward(q);
    dealias_in_place(qs);
    bq = expand(qs);
    for (std::size_t i = 0; i < g.size(); ++i) {
      cplx div = I * o.kx[i] * flux[0][i];
      if (d == 2) div += I * o.ky[i] * flux[1][i];
      bdiv[i] = div;
    }
  }
  FullSpectrum dp(g), dm(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double a = o.kabs[i];
    const double st = std::sqrt(o.tmu[i]);
    const cplx lin = include_linear ? I * st * a : cplx{};
    // B+- = i div(eta v) +- (1/2) T^{-1/2} |D| |v|^2.
    const cplx bp = I * bdiv[i] + 0.5 * a / st * bq[i];
    const cplx bm = I * bdiv[i] - 0.5 * a / st * bq[i];
    dp[i] = lin * up[i] + I * (0.5 * p.eps) * bp;
    dm[i] = -lin * um[i] + I * (0.5 * p.eps) * bm;
  }
  DiagState out(g);
  out.mu = diag.mu;
  out.u_plus = inverse(dp);
  out.u_minus = inverse(dm);
  return out;
}

void diag_propagate(DiagState& diag, double dt) {
  if (dt == 0.0) return;
  const Grid& g = diag.grid();
  const FullOps o = full_ops(g, diag.mu);
  FullSpectrum up = forward(diag.u_plus);
  FullSpectrum um = forward(diag.u_minus);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double ph = std::sqrt(o.tmu[i]) * o.kabs[i] * dt;
    up[i] *= std::polar(1.0, ph);
    um[i] *= std::polar(1.0, -ph);
  }
  diag.u_plus = inverse(up);
  diag.u_minus = inverse(um);
}

namespace {

struct Derivs {
  std::vector<double> kx, ky;
};

Derivs half_derivs(const Grid& g) {
  Derivs o;
  o.kx.resize(g.spectral_size());
  o.ky.resize(g.spectral_size());
  for_each_mode(g, [&](std::size_t idx, const Wavevector& w) {
    const Wavevector e = model_wavevector(w);
    o.kx[idx] = e.xi[0];
    o.ky[idx] = e.xi[1];
  });
  return o;
}

void require_2d(const std::vector<Field>& v) {
  if (v.size() != 2 || v[0].grid.dim() != 2) throw Error("expected a 2D vector field with two components");
}

}  // namespace

std::vector<Field> project_curl_free(const std::vector<Field>& v) {
  require_2d(v);
  const Grid& g = v[0].grid;
  const Derivs o = half_derivs(g);
  SpectralField a = forward(v[0]);
  SpectralField b = forward(v[1]);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double k2 = o.kx[i] * o.kx[i] + o.ky[i] * o.ky[i];
    if (k2 == 0.0) continue;
    const cplx w = (o.kx[i] * a[i] + o.ky[i] * b[i]) / k2;
    a[i] = o.kx[i] * w;
    b[i] = o.ky[i] * w;
  }
  return {inverse(a), inverse(b)};
}

double curl_residual(const std::vector<Field>& v) {
  require_2d(v);
  const Grid& g = v[0].grid;
  const Derivs o = half_derivs(g);
  const SpectralField a = forward(v[0]);
  const SpectralField b = forward(v[1]);
  SpectralField c(g);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = I * (o.ky[i] * a[i] - o.kx[i] * b[i]);
  return l2_norm(c);
}

double gradient_l2(const std::vector<Field>& v) {
  if (v.empty()) return 0.0;
  const Grid& g = v[0].grid;
  const Derivs o = half_derivs(g);
  double s = 0.0;
  for (const auto& comp : v) {
    const SpectralField a = forward(comp);
    SpectralField dx(g), dy(g);
    for (std::size_t i = 0; i < a.size(); ++i) {
      dx[i] = I * o.kx[i] * a[i];
      dy[i] = I * o.ky[i] * a[i];
    }
    const double nx = l2_norm(dx);
    const double ny = l2_norm(dy);
    s += nx * nx + ny * ny;
  }
  return std::sqrt(s);
}

void require_curl_free(const std::vector<Field>& v, double tol) {
  if (v.size() != 2) return;
  const double res = curl_residual(v);
  const double grad = gradient_l2(v);
  if (res > tol * grad && res > 1e-300) {
    std::ostringstream os;
    os << "velocity is not curl-free: residual " << res << " exceeds " << tol << " * ||grad v||_2 = " << tol * grad;
    throw CurlError(os.str());
  }
}

}  // namespace wblab
