#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "wblab/spectral.hpp"

namespace wblab {

/// Japanese bracket <x> = sqrt(1 + x^2).
double japanese(double x);

/// Full-dispersion symbol tanh(sqrt(mu)|xi|)/(sqrt(mu)|xi|), equal to 1 at xi = 0.
double t_mu(double xi_abs, double mu);
double sqrt_t_mu(double xi_abs, double mu);
double inv_sqrt_t_mu(double xi_abs, double mu);

/// m_1(xi) = xi sqrt(tanh|xi|/|xi|) for d = 1 (odd); m_2 = |xi| sqrt(tanh|xi|/|xi|) for d = 2.
double m_symbol(double xi, int d);

/// Frequency-localized dispersive amplitude A_{mu,d}(lambda) = mu^{-1/2} lambda^{d/2-1} <sqrt(mu) lambda>^{d/4+1}.
double decay_rate(double lambda, double mu, int d);

/// Time at which the dispersive bound mu^{-1/2} t^{-d/2} lambda^{d/2-1} <sqrt(mu) lambda>^{d/4+1}
/// meets the Bernstein bound lambda^d for a unit point source at frequency lambda.
double dispersive_time(double lambda, double mu, int d);

// Littlewood-Paley cutoffs. chi = 1 on |s| <= 1, 0 on |s| >= 2, glued smoothly with
// psi(x) = exp(-1/x):  chi(s) = psi(2-|s|) / (psi(2-|s|) + psi(|s|-1)).
double chi(double s);
/// beta(s) = chi(s) - chi(2s), supported in 1/2 <= |s| <= 2.
double beta(double s);
double beta_lambda(double s, double lambda);

/// Dyadic frequencies 2^j inside [4 pi / L, (n/3) 2 pi / L].
std::vector<double> dyadic_bands(const Grid& g);
Field lp_project(const Field& f, double lambda);
Field lp_low(const Field& f, double alpha);

struct LpDecomposition {
  double alpha;
  Field low;
  std::vector<double> lambdas;
  std::vector<Field> bands;
};
/// P_{<=alpha} f plus P_lambda f for lambda = 2 alpha, 4 alpha, ... until the lattice is covered.
LpDecomposition lp_decompose(const Field& f, double alpha);

/// Exact rational with positive denominator.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational make(std::int64_t num, std::int64_t den);
  bool operator==(const Rational& o) const = default;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

Rational operator+(Rational a, Rational b);
Rational operator-(Rational a, Rational b);
Rational operator*(Rational a, Rational b);

/// Lebesgue exponent stored through its reciprocal, so infinity is exactly 0.
struct Exponent {
  Rational reciprocal;

  static Exponent of(std::int64_t p, std::int64_t den = 1) { return {Rational::make(den, p)}; }
  static Exponent infinity() { return {Rational{0, 1}}; }
  bool is_infinite() const { return reciprocal.num == 0; }
  double value() const;
  /// Parses "8", "5/2", "inf".
  static Exponent parse(std::string_view text);
  std::string str() const;
};

struct AdmissiblePair {
  Exponent q;
  Exponent r;
  int d = 1;
};

/// 2/q = d (1/2 - 1/r) with 2 < q <= inf and 2 <= r <= inf, in exact arithmetic.
bool check_admissible(const Exponent& q, const Exponent& r, int d);
inline bool check_admissible(const AdmissiblePair& p) { return check_admissible(p.q, p.r, p.d); }

enum class SymbolKind {
  Identity,
  TMu,
  SqrtTMu,
  InvSqrtTMu,
  MSymbol,
  Bessel,
  BesselMu,
  HomogeneousAbs,
  RieszComponent,
  Derivative,
  LPBand,
  LPLow,
  Product,
};

/// Declarative description of a Fourier symbol; evaluable at any lattice frequency.
struct SymbolSpec {
  SymbolKind kind = SymbolKind::Identity;
  double mu = 1.0;
  /// s for Bessel kinds and HomogeneousAbs, lambda for LPBand, alpha for LPLow, d for MSymbol.
  double param = 0.0;
  /// Component index j (1-based) for RieszComponent and Derivative.
  int component = 1;
  /// Value at xi = 0 for HomogeneousAbs with s < 0.
  double zero_mode_value = 0.0;
  std::vector<SymbolSpec> factors;

  static SymbolSpec identity() { return {}; }
  static SymbolSpec tmu(double mu);
  static SymbolSpec sqrt_tmu(double mu);
  static SymbolSpec inv_sqrt_tmu(double mu);
  /// (1/sqrt(mu)) m_d(sqrt(mu) xi), the phase of the linear propagator.
  static SymbolSpec m(int d, double mu = 1.0);
  static SymbolSpec bessel(double s);
  static SymbolSpec bessel_mu(double s, double mu);
  static SymbolSpec abs(double s, double zero_mode_value = 0.0);
  static SymbolSpec riesz(int j);
  static SymbolSpec derivative(int j);
  static SymbolSpec lp_band(double lambda);
  static SymbolSpec lp_low(double alpha);
  static SymbolSpec product(std::vector<SymbolSpec> factors);

  cplx operator()(const Wavevector& w) const;
  Symbol as_symbol() const;
  std::string name() const;
};

SymbolSpec operator*(const SymbolSpec& a, const SymbolSpec& b);

/// Registry lookup: "tmu", "sqrt_tmu", "inv_sqrt_tmu", "m1", "m2", "bessel:s",
/// "bessel_mu:s", "abs:s", "riesz:j", "dx:j", "lp:lambda", "lp_low:alpha", "id",
/// and products joined with '*'. `mu` feeds the mu-dependent kinds.
SymbolSpec parse_symbol(std::string_view name, double mu = 1.0);

Multiplier make_multiplier(const Grid& g, const SymbolSpec& spec);
Field apply_multiplier(const Field& f, const SymbolSpec& spec);

}  // namespace wblab
