#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "wblab/spectral.hpp"

namespace wblab {

enum class ModelKind { Whitham1D, WB1D, WB2D };

std::string to_string(ModelKind k);
ModelKind parse_model(std::string_view name);
int model_dim(ModelKind k);

struct ModelParams {
  ModelKind model = ModelKind::Whitham1D;
  double eps = 0.1;
  double mu = 1.0;
  double s = 1.7;
  /// Non-cavitation floor for 1 + eps*eta.
  double h0 = 0.5;

  int dim() const { return model_dim(model); }
  bool has_velocity() const { return model != ModelKind::Whitham1D; }
  /// Regularity threshold of the well-posedness theory: 13/8 for Whitham, 1 + 5d/8 for WB.
  double regularity_threshold() const;
  /// Throws ConfigError naming the parameter. eps = 0 is accepted only when
  /// allow_linear is set (used by conservation checks and linear reference runs).
  void validate(bool allow_low_regularity = false, bool allow_linear = false) const;
};

/// (eta, v, t). v has `dim` components for the WB models and is empty for Whitham.
struct State {
  Field eta;
  std::vector<Field> v;
  double t = 0.0;

  explicit State(const Grid& g) : eta(g) {}
  State(Field eta_, std::vector<Field> v_, double t_ = 0.0)
      : eta(std::move(eta_)), v(std::move(v_)), t(t_) {}

  const Grid& grid() const { return eta.grid; }
  bool all_finite() const;
  /// sup over components of |v|; 0 without velocity.
  double linf_v() const;
};

/// Zero state of the right shape for a model on a grid.
State zero_state(const Grid& g, const ModelParams& p);

/// Diagonal variables u+-. The spatial mean of v has no Riesz image and is carried
/// separately, unchanged by the flow.
struct DiagState {
  ComplexField u_plus;
  ComplexField u_minus;
  double mu = 1.0;
  std::array<double, 2> v_mean{0.0, 0.0};

  explicit DiagState(const Grid& g) : u_plus(g), u_minus(g) {}
  const Grid& grid() const { return u_plus.grid; }
};

/// Wavevector seen by the model operators: Nyquist components count as zero frequency,
/// so odd operators (derivatives, Riesz) vanish there and real fields stay real.
Wavevector model_wavevector(const Wavevector& w);

/// Spectral engine for one (grid, params): cached symbols, exact linear flow, and the
/// dealiased nonlinear terms. Components are eta, then v_1..v_d, as half spectra.
class Model {
 public:
  using Spectra = std::vector<SpectralField>;

  Model(const Grid& g, const ModelParams& p);

  const Grid& grid() const { return grid_; }
  const ModelParams& params() const { return params_; }
  int components() const { return params_.has_velocity() ? 1 + grid_.dim() : 1; }

  Spectra to_spectra(const State& s) const;
  State to_state(const Spectra& u, double t) const;

  /// Linear part L u.
  Spectra linear(const Spectra& u) const;
  /// Nonlinear part N(u), products dealiased.
  Spectra nonlinear(const Spectra& u) const;
  /// u <- exp(dt L) u, solved mode by mode.
  void propagate(Spectra& u, double dt) const;
  /// Helmholtz projection of the velocity onto gradients (no-op unless 2D WB).
  void project(Spectra& u) const;

 private:
  Grid grid_;
  ModelParams params_;
  // Per half-spectrum entry: effective wavevector components, |xi_eff|, T_mu(|xi_eff|).
  std::vector<double> kx_, ky_, kabs_, tmu_;
  std::vector<bool> band_;
};

/// -sqrt(T_mu(D)) d_x eta - (eps/2) d_x(eta^2).
Field whitham_rhs(const Field& eta, const ModelParams& p);
/// (eta', v') of the Whitham-Boussinesq system. Throws CurlError on rotational 2D input.
State wb_rhs(const State& state, const ModelParams& p);

/// S(t) = exp(sign * i t (1/sqrt(mu)) m_d(sqrt(mu) D)) on the full lattice of one grid.
/// The phase is sampled once; each application costs one exponential per mode.
class Propagator {
 public:
  Propagator(const Grid& g, double mu);
  void apply(FullSpectrum& fs, double t, int sign) const;
  ComplexField apply(const ComplexField& f, double t, int sign) const;
  /// max |d/dxi of the phase| over the lattice, the fastest group speed.
  double max_group_speed() const;

 private:
  Grid grid_;
  double mu_;
  std::vector<double> phase_;
};

/// Propagator(f.grid, mu).apply(f, t, sign).
ComplexField linear_propagate(const ComplexField& f, double t, double mu, int sign);
ComplexField linear_propagate(const Field& f, double t, double mu, int sign);

DiagState diagonalize(const State& state, double mu);
/// Throws Error if the imaginary part of eta exceeds 1e-8 relative.
State reconstruct(const DiagState& diag);
/// Time derivative of (u+, u-) for the WB system; without the linear part when
/// include_linear is false.
DiagState diag_rhs(const DiagState& diag, const ModelParams& p, bool include_linear = true);
/// u+- <- exp(+-i sqrt(T_mu) |D| dt) u+-, the exact diagonal linear flow.
void diag_propagate(DiagState& diag, double dt);

/// Keep (xi . v^) xi / |xi|^2; the zero mode passes unchanged.
std::vector<Field> project_curl_free(const std::vector<Field>& v);
/// L2 norm of d_2 v_1 - d_1 v_2.
double curl_residual(const std::vector<Field>& v);
/// (sum_jk ||d_k v_j||_2^2)^{1/2}.
double gradient_l2(const std::vector<Field>& v);
/// Throws CurlError when curl_residual > tol * max(gradient_l2, tiny).
void require_curl_free(const std::vector<Field>& v, double tol = 1e-8);

}  // namespace wblab
