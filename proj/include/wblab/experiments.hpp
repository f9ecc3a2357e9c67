#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wblab/fit.hpp"
#include "wblab/initial_data.hpp"
#include "wblab/integrator.hpp"
#include "wblab/symbols.hpp"

namespace wblab {

/// Pinned constants produced by the calibration run and read by every bound check.
struct Constants {
  std::string version = "unset";
  double gronwall_whitham = 0.0;
  double gronwall_wb1d = 0.0;
  double gronwall_wb2d = 0.0;
  double coercive_c1 = 0.0;
  double coercive_c2 = 0.0;
  double strichartz_1d = 0.0;
  double strichartz_2d = 0.0;
  double commutator_tilbert = 0.0;
  double commutator_inv_tilbert = 0.0;
  double refined = 0.0;
  double kappa_whitham = 0.0;
  double kappa_wb1d = 0.0;
  double kappa_wb2d = 0.0;

  double gronwall_c(ModelKind k) const;
  double kappa(ModelKind k) const;
};

// ---------------------------------------------------------------------------------------
// Refined Strichartz decomposition parameters.

struct DecompositionParams {
  double T = 1.0;
  double omega = 1.0;
  std::function<double(double)> rho;
  double theta = 0.05;
  double gamma = 0.05;
  AdmissiblePair pair;

  /// omega = (mu T)^{-1/5}, rho = T^{4/5} mu^{-1/5} / lambda in 1D, pair (4, inf);
  /// omega = mu^{-1/6} T^{-1/3}, rho = T^{2/3} mu^{-1/6} / lambda in 2D, pair (21/10, 42).
  static DecompositionParams preset(int d, double mu, double T);
  /// Largest lambda among `lambdas` with rho(lambda) > T, or none.
  std::optional<double> first_violation(const std::vector<double>& lambdas) const;
};

// ---------------------------------------------------------------------------------------
// Frequency-localized dispersive decay.

struct DecayConfig {
  int d = 1;
  double mu = 1.0;
  double lambda = 8.0;
  int n = 4096;
  double length = 400.0;
  double t_min = 50.0;
  double t_max = 700.0;
  int samples = 24;
  /// Width of the Gaussian datum before the band projection.
  double width = 0.2;
};

struct DecaySample {
  double t = 0.0;
  double linf = 0.0;
  double bound_ratio = 0.0;
};

struct DecayReport {
  FitResult fit;
  std::vector<DecaySample> samples;
  double max_bound_ratio = 0.0;
  double linf_band = 0.0;  ///< ||P_lambda f||_inf
  double l1_data = 0.0;    ///< ||f||_1
  double group_speed = 0.0;
};

/// Largest group speed on the support lambda/2 <= |xi| <= 2 lambda.
double band_group_speed(double lambda, double mu);
/// Box side needed so that a packet leaving the centre stays clear of its periodic image up to t_max.
double required_length(double lambda, double mu, double t_max);
/// Throws WrapAroundError (with the required L) if the window outlives the box.
DecayReport decay_experiment(const DecayConfig& cfg);

// ---------------------------------------------------------------------------------------
// Scaling identity S_mu(t) P_lambda = sigma_{1/sqrt mu} S_1(t/sqrt mu) P_{sqrt mu lambda} sigma_{sqrt mu}.

struct ScalingResult {
  double max_error = 0.0;
  double sup_f = 0.0;
  bool pass = false;
};

ScalingResult scaling_identity_test(double mu, double lambda, double t, const Field& f);

// ---------------------------------------------------------------------------------------
// Frequency-localized Strichartz.

struct StrichartzConfig {
  int d = 1;
  std::vector<double> mus{0.01, 0.1, 1.0};
  std::vector<double> lambdas{2, 4, 8, 16, 32, 64};
  AdmissiblePair pair{Exponent::of(8), Exponent::of(4), 1};
  /// T = horizon_factor * t_lambda unless fixed_T > 0.
  double horizon_factor = 20.0;
  double fixed_T = 0.0;
  int time_samples = 96;
};

struct StrichartzPoint {
  double lambda = 0.0;
  double mu = 0.0;
  double T = 0.0;
  int n = 0;
  double length = 0.0;
  double ratio = 0.0;
};

struct StrichartzReport {
  std::vector<StrichartzPoint> points;
  double max_ratio = 0.0;
  double min_ratio = 0.0;
  double spread() const { return min_ratio > 0.0 ? max_ratio / min_ratio : 0.0; }
};

/// ||S(t) P_lambda f||_{L^q_T L^r_x} / (A_{mu,d}(lambda)^{1/2-1/r} ||P_lambda f||_2) for the
/// frequency-localized point source on the given grid.
double strichartz_ratio(const Grid& g, double mu, double lambda, const AdmissiblePair& pair, double T,
                        int time_samples);
/// Throws Error for a non-admissible pair.
StrichartzReport strichartz_experiment(const StrichartzConfig& cfg);

// ---------------------------------------------------------------------------------------
// Refined Strichartz bound along a Whitham trajectory.

struct RefinedResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  double T = 0.0;
};

/// lhs = ||d_x eta||_{L^2_T L^inf}, rhs = mu^{-1/5-theta} T^{3/10+theta} ||eta||_{L^inf_T H^s}
///       + eps mu^{-2/5-theta} T^{11/10+theta} ||eta||^2_{L^inf_T H^s}.
RefinedResult refined_strichartz_check(const Trajectory& traj, const ModelParams& p, const DecompositionParams& dp);

// ---------------------------------------------------------------------------------------
// Commutator probes.

struct CommutatorConfig {
  int d = 1;
  int n = 1024;
  double length = 100.53096491487338;  // 32 pi
  double s = 1.7;
  std::vector<double> mus{1e-3, 1e-2, 0.1, 1.0};
  /// Upper band edges of the ensemble members; each gets `per_band` seeds.
  std::vector<double> bands{1.0, 2.0, 4.0, 8.0};
  int per_band = 3;
  std::uint64_t seed = 1;
};

struct CommutatorPoint {
  double mu = 0.0;
  double max_tilbert = 0.0;
  double max_inv_tilbert = 0.0;
};

struct CommutatorReport {
  std::vector<CommutatorPoint> points;
  double max_tilbert = 0.0;
  double max_inv_tilbert = 0.0;
  double spread_tilbert = 0.0;
  double spread_inv_tilbert = 0.0;
};

/// ||[J^s sqrt(T_mu)(D), f] g||_2 / (||grad f||_inf ||J^{s-1} g||_2 + ||J^s f||_2 ||g||_inf).
double commutator_ratio_tilbert(const Field& f, const Field& g, double s, double mu);
/// ||[J^s T_mu^{-1/2}(D), f] g||_2 / (||grad f||_inf ||J^{s-1} J_mu^{1/2} g||_2 + ||J^s J_mu^{1/2} f||_2 ||g||_inf).
double commutator_ratio_inv_tilbert(const Field& f, const Field& g, double s, double mu);
CommutatorReport commutator_probe(const CommutatorConfig& cfg);
/// 1D: n = 1024 on 32 pi, bands up to 8. 2D: n = 128 on 16 pi, bands up to 3.5.
CommutatorConfig standard_commutator(int d, std::uint64_t seed = 1);

// ---------------------------------------------------------------------------------------
// Gronwall consistency.

struct GronwallResult {
  /// max_t of the bound ratio (energy form for WB).
  double max_ratio = 0.0;
  /// WB only: max_t ||U(t)||^2_V / (C1 C2 H(t) / h0 exp(c eps int H P) ||U0||^2_V).
  double max_ratio_vnorm = 0.0;
  /// Smallest c for which the energy-form ratio stays <= 1 on this trajectory.
  double c_star = 0.0;
  std::vector<double> ratios;
};

/// Whitham: ||eta(t)||^2_{H^s} / (exp(c eps int_0^t ||d_x eta||_inf) ||eta_0||^2_{H^s}).
/// WB: E_s(t) / (exp(c eps int_0^t H P) E_s(0)). Integrals by trapezoid over the records.
GronwallResult gronwall_check(const Trajectory& traj, const ModelParams& p, double c, const Constants& k);

/// Seeded ensemble used by the Gronwall criterion (offset 0) and its calibration (offset 100).
struct EnsembleRun {
  ModelParams params;
  Grid grid;
  State initial;
  StepConfig step;
};
std::vector<EnsembleRun> gronwall_ensemble(ModelKind model, int count, std::uint64_t seed_offset);

// ---------------------------------------------------------------------------------------
// Energy coercivity.

struct CoercivityResult {
  double max_lower = 0.0;  ///< max h0 ||U||_V^2 / E_s
  double max_upper = 0.0;  ///< max E_s / (H ||U||_V^2)
  int samples = 0;
};

CoercivityResult coercivity_sweep(const std::vector<double>& mus, int per_mu, std::uint64_t seed_offset);

// ---------------------------------------------------------------------------------------
// Lifespan sweep.

struct LifespanConfig {
  ModelKind model = ModelKind::Whitham1D;
  int n = 2048;
  double length = 201.06192982974676;  // 64 pi
  DataSpec data{"gaussian", {1.0, 2.0}};
  std::vector<double> eps{0.1, 0.2, 0.4, 0.8};
  std::vector<double> mus{0.1, 0.3, 1.0};
  double s = 1.7;
  double h0 = 0.3;
  StepConfig step;
  double monotone_tolerance = 0.05;
};

struct LifespanPoint {
  double eps = 0.0;
  double mu = 0.0;
  std::optional<double> t_double;
  Termination termination;
  bool excluded = false;
  /// epsilon/mu/norm dependence of the theorem's lifespan with c = 1.
  double theorem_time = 0.0;
  double data_norm = 0.0;
  std::size_t steps = 0;
};

struct LifespanReport {
  std::vector<LifespanPoint> points;
  /// One fit of log t_double against log eps per mu (exponent = -a), keyed by mu.
  std::vector<std::pair<double, FitResult>> eps_fits;
  std::vector<std::pair<double, FitResult>> mu_fits;
  bool monotone_eps = true;
  bool monotone_mu = true;
  std::vector<std::string> monotonicity_notes;
  /// min over doubled points of t_double / theorem_time.
  double min_theorem_ratio = 0.0;
  int excluded = 0;
};

/// eps^{-1} (mu/eps)^{1/4} ||eta0||_{H^s}^{-5/4} for Whitham, eps^{-(d+3)/4} (mu/eps)^{1/4}
/// ||U0||_{V^s_mu}^{-(d+4)/4} for WB.
double theorem_time(ModelKind model, double eps, double mu, double data_norm);
LifespanReport lifespan_sweep(const LifespanConfig& cfg);
/// The fixed-profile sweep of each model; amplitude_scale multiplies the profile (calibration uses 0.75).
LifespanConfig standard_lifespan(ModelKind model, double amplitude_scale = 1.0);

// ---------------------------------------------------------------------------------------
// Calibration of the pinned constants on held-out ensembles.

struct CalibrationOptions {
  std::string version = "1";
  bool lifespan = true;
  /// Margin applied to observed maxima (minima for kappa use 1/margin_kappa).
  double margin = 1.25;
  double margin_gronwall = 1.5;
  double margin_kappa = 2.0;
};

struct CalibrationReport {
  Constants constants;
  /// Raw observed extremes before the margins, by name.
  std::vector<std::pair<std::string, double>> observed;
};

CalibrationReport calibrate_constants(const CalibrationOptions& opt);

/// Whitham runs of the Gronwall ensemble with snapshots kept, for the refined bound.
std::vector<EnsembleRun> refined_ensemble(int count, std::uint64_t seed_offset);

// ---------------------------------------------------------------------------------------
// Reports.

struct Provenance {
  std::uint64_t seed = 0;
  std::string grid;
  int threads = 1;
  std::string constants_version;
};

struct ExperimentReport {
  std::string name;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::pair<std::string, FitResult>> fits;
  std::vector<std::pair<std::string, double>> metrics;
  std::vector<std::string> notes;
  bool pass = true;
  std::string tolerance;
  Provenance provenance;
};

/// Worker threads used by the sweeps.
int experiment_threads();

}  // namespace wblab
