#include "wblab/functionals.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "wblab/error.hpp"
#include "wblab/symbols.hpp"

namespace wblab {

double sobolev_norm(const SpectralField& f, double s) {
  double acc = 0.0;
  for_each_mode(f.grid, [&](std::size_t idx, const Wavevector& w) {
    const double jb = 1.0 + w.abs() * w.abs();
    acc += hermitian_weight(f.grid, idx) * std::pow(jb, s) * std::norm(f[idx]);
  });
  return std::sqrt(acc * std::pow(f.grid.length(), f.grid.dim()));
}

double sobolev_norm(const FullSpectrum& f, double s) {
  double acc = 0.0;
  for_each_full_mode(f.grid, [&](std::size_t idx, const Wavevector& w) {
    const double jb = 1.0 + w.abs() * w.abs();
    acc += std::pow(jb, s) * std::norm(f[idx]);
  });
  return std::sqrt(acc * std::pow(f.grid.length(), f.grid.dim()));
}

double sobolev_norm(const Field& f, double s) { return sobolev_norm(forward(f), s); }
double sobolev_norm(const ComplexField& f, double s) { return sobolev_norm(forward(f), s); }

namespace {

// sum over components of ||m(D) v_j||^2_{H^s}.
double weighted_sq(const std::vector<Field>& v, double s, const std::function<double(double)>& m) {
  double acc = 0.0;
  for (const auto& c : v) {
    SpectralField sf = forward(c);
    for_each_mode(sf.grid, [&](std::size_t idx, const Wavevector& w) { sf[idx] *= m(w.abs()); });
    const double n = sobolev_norm(sf, s);
    acc += n * n;
  }
  return acc;
}

}  // namespace

double v_mu_norm(const State& state, double s, double mu) {
  const double e = sobolev_norm(state.eta, s);
  const double v2 = weighted_sq(state.v, s, [](double) { return 1.0; });
  const double d2 = weighted_sq(state.v, s, [](double a) { return std::sqrt(a); });
  return std::sqrt(e * e + v2 + std::sqrt(mu) * d2);
}

double t_weighted_norm(const State& state, double s, double mu) {
  const double e = sobolev_norm(state.eta, s);
  const double v2 = weighted_sq(state.v, s, [mu](double a) { return inv_sqrt_t_mu(a, mu); });
  return std::sqrt(e * e + v2);
}

double energy_whitham(const Field& eta, double s) {
  const double n = sobolev_norm(eta, s);
  return n * n;
}

double energy_wb(const State& state, const ModelParams& p) {
  const double hm = h_min(state, p.eps);
  if (!(hm > 0.0)) {
    std::ostringstream os;
    os << "energy: min(1 + eps eta) = " << hm << " <= 0, the energy weight is not coercive";
    throw NonCoerciveError(os.str());
  }
  const Grid& g = state.grid();
  const double e = sobolev_norm(state.eta, p.s);
  double acc = 0.0;
  std::vector<Field> w;
  for (const auto& c : state.v) {
    SpectralField sf = forward(c);
    for_each_mode(g, [&](std::size_t idx, const Wavevector& wv) {
      const double a = wv.abs();
      sf[idx] *= std::pow(1.0 + a * a, 0.5 * p.s) * inv_sqrt_t_mu(a, p.mu);
    });
    w.push_back(inverse(sf));
  }
  for (std::size_t i = 0; i < g.size(); ++i) {
    double q = 0.0;
    for (const auto& c : w) q += c[i] * c[i];
    acc += (1.0 + p.eps * state.eta[i]) * q;
  }
  acc *= std::pow(g.dx(), g.dim());
  return e * e + acc;
}

namespace {

// Spectral gradient of a scalar field, one Field per axis.
std::vector<Field> gradient(const Field& f, double mu, bool inv_sqrt_t) {
  const Grid& g = f.grid;
  const SpectralField sf = forward(f);
  std::vector<Field> out;
  for (int j = 0; j < g.dim(); ++j) {
    SpectralField d(g);
    for_each_mode(g, [&](std::size_t idx, const Wavevector& w) {
      const Wavevector e = model_wavevector(w);
      cplx m = cplx(0.0, e.xi[j]);
      if (inv_sqrt_t) m *= inv_sqrt_t_mu(e.abs(), mu);
      d[idx] = m * sf[idx];
    });
    out.push_back(inverse(d));
  }
  return out;
}

double sup_magnitude(const std::vector<Field>& comps) {
  if (comps.empty()) return 0.0;
  double m = 0.0;
  for (std::size_t i = 0; i < comps[0].size(); ++i) {
    double s = 0.0;
    for (const auto& c : comps) s += c[i] * c[i];
    m = std::max(m, s);
  }
  return std::sqrt(m);
}

}  // namespace

double p_quantity(const State& state, const ModelParams& p) {
  const auto ge = gradient(state.eta, p.mu, false);
  if (!p.has_velocity()) return sup_magnitude(ge);
  std::vector<Field> gv, tgv;
  for (const auto& c : state.v) {
    for (auto& x : gradient(c, p.mu, false)) gv.push_back(std::move(x));
    for (auto& x : gradient(c, p.mu, true)) tgv.push_back(std::move(x));
  }
  return sup_magnitude(ge) + sup_magnitude(gv) + sup_magnitude(tgv);
}

double h_quantity(const State& state, double eps) {
  return 1.0 + eps * (state.eta.max_abs() + state.linf_v());
}

double h_min(const State& state, double eps) {
  double m = std::numeric_limits<double>::infinity();
  for (double e : state.eta.values) m = std::min(m, 1.0 + eps * e);
  return m;
}

NormReport norm_report(const State& state, const ModelParams& p) {
  NormReport r;
  r.hs = sobolev_norm(state.eta, p.s);
  r.vsmu = p.has_velocity() ? v_mu_norm(state, p.s, p.mu) : r.hs;
  r.linf_eta = state.eta.max_abs();
  r.linf_v = state.linf_v();
  r.p_of_t = p_quantity(state, p);
  r.h_of_t = h_quantity(state, p.eps);
  r.h_min = h_min(state, p.eps);
  r.mass = state.eta.integral();
  if (!p.has_velocity()) {
    r.energy = r.hs * r.hs;
  } else {
    try {
      r.energy = energy_wb(state, p);
    } catch (const NonCoerciveError&) {
      r.energy = std::numeric_limits<double>::quiet_NaN();
    }
  }
  return r;
}

}  // namespace wblab
