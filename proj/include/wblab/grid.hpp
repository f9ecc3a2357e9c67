#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace wblab {

using cplx = std::complex<double>;

/// Periodic box [0, L)^d sampled with n points per axis.
///
/// Physical arrays are row-major with axis 0 = x1 (slow) and, in 2D, axis 1 = x2 (fast).
/// Spectral arrays use the real-to-complex half layout: the fast axis keeps only the
/// indices 0..n/2, so a 1D spectrum has n/2+1 entries and a 2D one n*(n/2+1).
/// The frequency lattice is xi_k = 2*pi*k/L with k in [-n/2, n/2); index n/2 is the
/// unpaired Nyquist mode.
class Grid {
 public:
  Grid(int dim, int n, double length);

  int dim() const { return dim_; }
  int n() const { return n_; }
  double length() const { return length_; }
  double dx() const { return length_ / n_; }
  /// Lattice spacing in frequency, 2*pi/L.
  double dk() const;

  /// Number of physical samples, n^d.
  std::size_t size() const;
  /// Number of stored half-spectrum coefficients.
  std::size_t spectral_size() const;
  /// Length of the fast spectral axis (n/2+1).
  int half_n() const { return n_ / 2 + 1; }

  /// Signed integer wavenumber of array index i along a full axis, in [-n/2, n/2).
  int signed_index(int i) const { return i < n_ / 2 ? i : i - n_; }
  double x(int i) const { return i * dx(); }
  /// Sorted frequency lattice along one axis.
  std::vector<double> freqs() const;
  /// Grid of the same n with side length L/alpha.
  Grid rescaled(double alpha) const;

  bool operator==(const Grid& other) const = default;

 private:
  int dim_;
  int n_;
  double length_;
};

/// One lattice frequency as seen by a multiplier.
struct Wavevector {
  int dim = 1;
  std::array<double, 2> xi{0.0, 0.0};
  std::array<int, 2> k{0, 0};
  std::array<bool, 2> nyquist{false, false};

  double abs() const;
  bool is_zero() const { return k[0] == 0 && k[1] == 0; }
};

/// Calls f(flat_index, wavevector) for every stored half-spectrum entry.
template <class F>
void for_each_mode(const Grid& g, F&& f) {
  const int n = g.n();
  const int h = g.half_n();
  const double dk = g.dk();
  Wavevector w;
  w.dim = g.dim();
  if (g.dim() == 1) {
    for (int j = 0; j < h; ++j) {
      const int kk = g.signed_index(j);
      w.k = {kk, 0};
      w.xi = {kk * dk, 0.0};
      w.nyquist = {j == n / 2, false};
      f(static_cast<std::size_t>(j), w);
    }
    return;
  }
  for (int i = 0; i < n; ++i) {
    const int k0 = g.signed_index(i);
    for (int j = 0; j < h; ++j) {
      const int k1 = g.signed_index(j);
      w.k = {k0, k1};
      w.xi = {k0 * dk, k1 * dk};
      w.nyquist = {i == n / 2, j == n / 2};
      f(static_cast<std::size_t>(i) * h + j, w);
    }
  }
}

/// Real scalar field sampled on a grid.
struct Field {
  Grid grid;
  std::vector<double> values;

  explicit Field(const Grid& g) : grid(g), values(g.size(), 0.0) {}
  Field(const Grid& g, std::vector<double> v);

  double& operator[](std::size_t i) { return values[i]; }
  double operator[](std::size_t i) const { return values[i]; }
  std::size_t size() const { return values.size(); }

  double max_abs() const;
  double min() const;
  bool all_finite() const;
  /// Riemann sum of the samples, exact for the integral of a trigonometric polynomial.
  double integral() const;

  Field& operator+=(const Field& o);
  Field& operator-=(const Field& o);
  Field& operator*=(double a);
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(double a, Field f);

/// Half-spectrum coefficients of a real field. Forward transforms carry 1/n^d, so a
/// unit cosine has coefficient 1/2 at each of +-k.
struct SpectralField {
  Grid grid;
  std::vector<cplx> coeffs;

  explicit SpectralField(const Grid& g) : grid(g), coeffs(g.spectral_size(), cplx{}) {}

  cplx& operator[](std::size_t i) { return coeffs[i]; }
  const cplx& operator[](std::size_t i) const { return coeffs[i]; }
  std::size_t size() const { return coeffs.size(); }

  SpectralField& operator+=(const SpectralField& o);
  SpectralField& operator*=(cplx a);
};

/// Coefficients on the full lattice (no Hermitian symmetry assumed); used for the
/// complex-valued diagonal variables.
struct FullSpectrum {
  Grid grid;
  std::vector<cplx> coeffs;

  explicit FullSpectrum(const Grid& g) : grid(g), coeffs(g.size(), cplx{}) {}
  std::size_t size() const { return coeffs.size(); }
  cplx& operator[](std::size_t i) { return coeffs[i]; }
  const cplx& operator[](std::size_t i) const { return coeffs[i]; }
};

/// Complex field sampled on a grid (the diagonal variables, propagated 2D data).
struct ComplexField {
  Grid grid;
  std::vector<cplx> values;

  explicit ComplexField(const Grid& g) : grid(g), values(g.size(), cplx{}) {}
  explicit ComplexField(const Field& f);

  std::size_t size() const { return values.size(); }
  cplx& operator[](std::size_t i) { return values[i]; }
  const cplx& operator[](std::size_t i) const { return values[i]; }

  double max_abs() const;
  bool all_finite() const;
  Field real() const;
  Field imag() const;
};

/// Calls f(flat_index, wavevector) for every full-lattice entry (row-major, both axes full).
template <class F>
void for_each_full_mode(const Grid& g, F&& f) {
  const int n = g.n();
  const double dk = g.dk();
  Wavevector w;
  w.dim = g.dim();
  if (g.dim() == 1) {
    for (int j = 0; j < n; ++j) {
      const int kk = g.signed_index(j);
      w.k = {kk, 0};
      w.xi = {kk * dk, 0.0};
      w.nyquist = {j == n / 2, false};
      f(static_cast<std::size_t>(j), w);
    }
    return;
  }
  for (int i = 0; i < n; ++i) {
    const int k0 = g.signed_index(i);
    for (int j = 0; j < n; ++j) {
      const int k1 = g.signed_index(j);
      w.k = {k0, k1};
      w.xi = {k0 * dk, k1 * dk};
      w.nyquist = {i == n / 2, j == n / 2};
      f(static_cast<std::size_t>(i) * n + j, w);
    }
  }
}

}  // namespace wblab
