#pragma once

#include "wblab/models.hpp"

namespace wblab {

/// (sum <xi>^{2s} |f^|^2 L^d)^{1/2}; equals the grid L2 norm at s = 0.
double sobolev_norm(const SpectralField& f, double s);
double sobolev_norm(const FullSpectrum& f, double s);
double sobolev_norm(const Field& f, double s);
double sobolev_norm(const ComplexField& f, double s);

/// (||eta||^2_{H^s} + ||v||^2_{H^s} + sqrt(mu) || |D|^{1/2} v ||^2_{H^s})^{1/2}.
/// The mean of v is included (it contributes to the H^s term only).
double v_mu_norm(const State& state, double s, double mu);
/// (||eta||^2_{H^s} + ||T_mu^{-1/2}(D) v||^2_{H^s})^{1/2}, the equivalent norm.
double t_weighted_norm(const State& state, double s, double mu);

/// ||eta||^2_{H^s}.
double energy_whitham(const Field& eta, double s);
/// int (J^s eta)^2 + (1 + eps eta) |J^s T_mu^{-1/2}(D) v|^2 dx. Throws NonCoerciveError when
/// min(1 + eps eta) <= 0.
double energy_wb(const State& state, const ModelParams& p);

/// Whitham: ||d_x eta||_inf. WB: ||grad eta||_inf + ||grad v||_inf + ||T_mu^{-1/2} grad v||_inf,
/// with pointwise Euclidean (Frobenius for grad v) magnitudes.
double p_quantity(const State& state, const ModelParams& p);
/// 1 + eps (||eta||_inf + ||v||_inf).
double h_quantity(const State& state, double eps);
/// min over the grid of 1 + eps eta.
double h_min(const State& state, double eps);

struct NormReport {
  double hs = 0.0;
  double vsmu = 0.0;
  double linf_eta = 0.0;
  double linf_v = 0.0;
  double p_of_t = 0.0;
  double h_of_t = 1.0;
  double h_min = 1.0;
  double mass = 0.0;
  /// Whitham E_s or WB E_s; NaN when the WB weight is not coercive.
  double energy = 0.0;
};

/// For Whitham vsmu equals hs.
NormReport norm_report(const State& state, const ModelParams& p);

}  // namespace wblab
