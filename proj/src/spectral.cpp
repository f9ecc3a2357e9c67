#include "wblab/spectral.hpp"

#include <cmath>
#include <sstream>

#include "fft.hpp"
#include "wblab/error.hpp"

namespace wblab {

SpectralField forward(const Field& f) {
  if (!f.all_finite()) throw NonFiniteError("forward transform: input contains NaN or Inf");
  const Grid& g = f.grid;
  SpectralField out(g);
  detail::FftEngine::get(g.dim(), g.n()).r2c(f.values.data(), out.coeffs.data());
  const double scale = 1.0 / static_cast<double>(g.size());
  for (auto& c : out.coeffs) c *= scale;
  return out;
}

Field inverse(const SpectralField& sf) {
  const Grid& g = sf.grid;
  Field out(g);
  detail::FftEngine::get(g.dim(), g.n()).c2r(sf.coeffs.data(), out.values.data());
  return out;
}

FullSpectrum forward(const ComplexField& f) {
  if (!f.all_finite()) throw NonFiniteError("forward transform: input contains NaN or Inf");
  const Grid& g = f.grid;
  FullSpectrum out(g);
  detail::FftEngine::get(g.dim(), g.n()).c2c_forward(f.values.data(), out.coeffs.data());
  const double scale = 1.0 / static_cast<double>(g.size());
  for (auto& c : out.coeffs) c *= scale;
  return out;
}

ComplexField inverse(const FullSpectrum& fs) {
  const Grid& g = fs.grid;
  ComplexField out(g);
  detail::FftEngine::get(g.dim(), g.n()).c2c_backward(fs.coeffs.data(), out.values.data());
  return out;
}

namespace {

// Full-lattice flat index of -k for the entry at (i, j).
std::size_t mirror_full(const Grid& g, std::size_t idx) {
  const int n = g.n();
  if (g.dim() == 1) return (n - static_cast<int>(idx)) % n;
  const int i = static_cast<int>(idx) / n;
  const int j = static_cast<int>(idx) % n;
  return static_cast<std::size_t>((n - i) % n) * n + (n - j) % n;
}

}  // namespace

FullSpectrum expand(const SpectralField& sf) {
  const Grid& g = sf.grid;
  FullSpectrum out(g);
  const int n = g.n();
  const int h = g.half_n();
  if (g.dim() == 1) {
    for (int j = 0; j < n; ++j) out[j] = j < h ? sf[j] : std::conj(sf[n - j]);
    return out;
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const std::size_t dst = static_cast<std::size_t>(i) * n + j;
      if (j < h) {
        out[dst] = sf[static_cast<std::size_t>(i) * h + j];
      } else {
        const int mi = (n - i) % n;
        out[dst] = std::conj(sf[static_cast<std::size_t>(mi) * h + (n - j)]);
      }
    }
  }
  return out;
}

SpectralField real_part(const FullSpectrum& fs) {
  const Grid& g = fs.grid;
  SpectralField out(g);
  const int n = g.n();
  const int h = g.half_n();
  const int rows = g.dim() == 1 ? 1 : n;
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < h; ++j) {
      const std::size_t full = g.dim() == 1 ? j : static_cast<std::size_t>(i) * n + j;
      const std::size_t half = g.dim() == 1 ? j : static_cast<std::size_t>(i) * h + j;
      out[half] = 0.5 * (fs[full] + std::conj(fs[mirror_full(g, full)]));
    }
  }
  return out;
}

double imaginary_norm(const FullSpectrum& fs) {
  const Grid& g = fs.grid;
  double s = 0.0;
  for (std::size_t idx = 0; idx < fs.size(); ++idx) {
    const cplx c = (fs[idx] - std::conj(fs[mirror_full(g, idx)])) * 0.5;
    s += std::norm(c);
  }
  return std::sqrt(s * std::pow(g.length(), g.dim()));
}

namespace {

std::string describe(const Wavevector& w) {
  std::ostringstream os;
  os.precision(17);
  os << "xi=(" << w.xi[0];
  if (w.dim == 2) os << ", " << w.xi[1];
  os << ") at lattice index (" << w.k[0];
  if (w.dim == 2) os << ", " << w.k[1];
  os << ")";
  return os.str();
}

cplx checked(const Symbol& symbol, const Wavevector& w) {
  const cplx v = symbol(w);
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    throw NonFiniteError("symbol is not finite at " + describe(w));
  return v;
}

cplx alias_averaged(const Symbol& symbol, const Wavevector& w) {
  if (!w.nyquist[0] && !w.nyquist[1]) return checked(symbol, w);
  cplx acc{};
  int count = 0;
  for (int s0 : {1, -1}) {
    if (s0 < 0 && !w.nyquist[0]) continue;
    for (int s1 : {1, -1}) {
      if (s1 < 0 && !w.nyquist[1]) continue;
      Wavevector a = w;
      a.xi[0] *= s0;
      a.xi[1] *= s1;
      a.k[0] *= s0;
      a.k[1] *= s1;
      acc += checked(symbol, a);
      ++count;
    }
  }
  return acc / static_cast<double>(count);
}

}  // namespace

Multiplier::Multiplier(const Grid& g, const Symbol& symbol) : grid_(g), values_(g.spectral_size()) {
  for_each_mode(g, [&](std::size_t idx, const Wavevector& w) { values_[idx] = alias_averaged(symbol, w); });
}

Multiplier Multiplier::operator*(const Multiplier& other) const {
  std::vector<cplx> v(values_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = values_[i] * other.values_[i];
  return Multiplier(grid_, std::move(v));
}

std::vector<cplx> sample_full(const Grid& g, const Symbol& symbol) {
  std::vector<cplx> out(g.size());
  for_each_full_mode(g, [&](std::size_t idx, const Wavevector& w) { out[idx] = checked(symbol, w); });
  return out;
}

void apply_in_place(SpectralField& sf, const Multiplier& m) {
  for (std::size_t i = 0; i < sf.size(); ++i) sf[i] *= m[i];
}

void apply_in_place(FullSpectrum& fs, const std::vector<cplx>& m) {
  for (std::size_t i = 0; i < fs.size(); ++i) fs[i] *= m[i];
}

SpectralField apply(SpectralField sf, const Multiplier& m) {
  apply_in_place(sf, m);
  return sf;
}

Field apply_multiplier(const Field& f, const Symbol& symbol) {
  return inverse(apply(forward(f), Multiplier(f.grid, symbol)));
}

ComplexField apply_multiplier(const ComplexField& f, const Symbol& symbol) {
  auto fs = forward(f);
  apply_in_place(fs, sample_full(f.grid, symbol));
  return inverse(fs);
}

bool in_dealias_band(const Grid& g, const Wavevector& w) {
  const int limit = g.n() / 3;
  return std::abs(w.k[0]) <= limit && std::abs(w.k[1]) <= limit;
}

void dealias_in_place(SpectralField& sf) {
  for_each_mode(sf.grid, [&](std::size_t idx, const Wavevector& w) {
    if (!in_dealias_band(sf.grid, w)) sf[idx] = 0.0;
  });
}

Field dealias(const Field& f) {
  auto sf = forward(f);
  dealias_in_place(sf);
  return inverse(sf);
}

Field rescale_sigma(const Field& f, double alpha) {
  if (!(alpha > 0.0)) throw Error("rescale_sigma: alpha must be positive");
  // Sample j of the rescaled grid sits at x_j / alpha, so sigma_alpha f there is alpha^d f(x_j).
  Field out(f.grid.rescaled(alpha), f.values);
  out *= std::pow(alpha, f.grid.dim());
  return out;
}

double hermitian_weight(const Grid& g, std::size_t flat_index) {
  const int h = g.half_n();
  const int j = static_cast<int>(flat_index % h);
  return (j == 0 || j == g.n() / 2) ? 1.0 : 2.0;
}

double l2_norm(const SpectralField& sf) {
  double s = 0.0;
  for (std::size_t i = 0; i < sf.size(); ++i) s += hermitian_weight(sf.grid, i) * std::norm(sf[i]);
  return std::sqrt(s * std::pow(sf.grid.length(), sf.grid.dim()));
}

double l2_norm(const FullSpectrum& fs) {
  double s = 0.0;
  for (const auto& c : fs.coeffs) s += std::norm(c);
  return std::sqrt(s * std::pow(fs.grid.length(), fs.grid.dim()));
}

double lp_norm(const ComplexField& f, double p) {
  if (std::isinf(p)) return f.max_abs();
  double s = 0.0;
  for (const auto& v : f.values) s += std::pow(std::abs(v), p);
  return std::pow(s * std::pow(f.grid.dx(), f.grid.dim()), 1.0 / p);
}

double lp_norm(const Field& f, double p) {
  if (std::isinf(p)) return f.max_abs();
  double s = 0.0;
  for (double v : f.values) s += std::pow(std::abs(v), p);
  return std::pow(s * std::pow(f.grid.dx(), f.grid.dim()), 1.0 / p);
}

}  // namespace wblab
