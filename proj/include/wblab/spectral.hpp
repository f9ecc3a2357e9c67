#pragma once

#include <functional>
#include <limits>

#include "wblab/grid.hpp"

namespace wblab {

/// A Fourier symbol evaluated at one lattice frequency.
using Symbol = std::function<cplx(const Wavevector&)>;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Forward transform with 1/n^d normalization. Rejects non-finite input.
SpectralField forward(const Field& f);
/// Inverse transform (unnormalized sum), so inverse(forward(f)) == f.
Field inverse(const SpectralField& sf);

/// Complex-to-complex transforms on the full lattice, same normalization.
FullSpectrum forward(const ComplexField& f);
ComplexField inverse(const FullSpectrum& fs);

/// Hermitian expansion of a half spectrum onto the full lattice.
FullSpectrum expand(const SpectralField& sf);
/// Half spectrum of the real part of the field represented by a full spectrum.
SpectralField real_part(const FullSpectrum& fs);
/// L2 norm of the imaginary part of the field represented by a full spectrum.
double imaginary_norm(const FullSpectrum& fs);

/// A symbol sampled on the half-spectrum lattice of a grid.
///
/// At lattice points with a Nyquist component the symbol is averaged over the sign
/// flips of those components, so that real fields stay real for any symbol with
/// m(-xi) = conj(m(xi)).
class Multiplier {
 public:
  Multiplier(const Grid& g, const Symbol& symbol);
  Multiplier(const Grid& g, std::vector<cplx> values) : grid_(g), values_(std::move(values)) {}

  const Grid& grid() const { return grid_; }
  const std::vector<cplx>& values() const { return values_; }
  cplx operator[](std::size_t i) const { return values_[i]; }

  Multiplier operator*(const Multiplier& other) const;

 private:
  Grid grid_;
  std::vector<cplx> values_;
};

/// A symbol sampled on the full lattice, no alias averaging.
std::vector<cplx> sample_full(const Grid& g, const Symbol& symbol);

void apply_in_place(SpectralField& sf, const Multiplier& m);
void apply_in_place(FullSpectrum& fs, const std::vector<cplx>& m);
SpectralField apply(SpectralField sf, const Multiplier& m);
/// (m(xi) * f^)(x); throws if the symbol is NaN at a lattice point.
Field apply_multiplier(const Field& f, const Symbol& symbol);
ComplexField apply_multiplier(const ComplexField& f, const Symbol& symbol);

/// True if every integer wavenumber component satisfies |k| <= n/3.
bool in_dealias_band(const Grid& g, const Wavevector& w);
void dealias_in_place(SpectralField& sf);
Field dealias(const Field& f);

/// sigma_alpha f(x) = alpha^d f(alpha x), returned on the grid of side L/alpha.
Field rescale_sigma(const Field& f, double alpha);

/// Parseval L2 norm computed from the half spectrum.
double l2_norm(const SpectralField& sf);
double l2_norm(const FullSpectrum& fs);
/// Grid-quadrature L^p norm; p = kInfinity gives the grid maximum.
double lp_norm(const Field& f, double p);
double lp_norm(const ComplexField& f, double p);
/// Multiplicity of a half-spectrum entry in the full lattice (1 or 2).
double hermitian_weight(const Grid& g, std::size_t flat_index);

}  // namespace wblab
