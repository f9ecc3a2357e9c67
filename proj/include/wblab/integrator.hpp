#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wblab/functionals.hpp"
#include "wblab/models.hpp"

namespace wblab {

struct StepConfig {
  /// Base step. With adaptive_dt the step is min(dt, cfl_safety dx / max(1, eps sup|(eta, v)|)),
  /// re-evaluated every 50 steps; otherwise dt is used as is.
  double dt = 0.01;
  double t_end = 1.0;
  double cfl_safety = 0.5;
  bool adaptive_dt = true;
  /// Multiple of the initial sup norm at which a run counts as blown up.
  double blowup_threshold = 1e3;
  double doubling_factor = 2.0;
  /// Stop at the first doubling of the monitored norm.
  bool stop_on_double = true;
  /// Keep every k-th state (0 keeps none). The initial and final states are kept when k > 0.
  int snapshot_every = 0;
  /// Record norms every k steps (the final state is always recorded).
  int record_every = 1;

  void validate() const;
};

enum class TerminationKind { HorizonReached, Doubled, BlownUp, NonFinite };
std::string to_string(TerminationKind k);

struct Termination {
  TerminationKind kind = TerminationKind::HorizonReached;
  /// Time of the event (t_end for HorizonReached, interpolated crossing for Doubled).
  double time = 0.0;
};

enum class NormKind { Hs, Vsmu, Linf, Energy };
NormKind parse_norm_kind(std::string_view name);
double norm_of(const NormReport& r, NormKind k);
/// Norm whose doubling defines the lifespan: H^s for Whitham, V^s_mu for WB.
NormKind default_norm_kind(const ModelParams& p);

struct Trajectory {
  std::vector<double> times;
  std::vector<NormReport> records;
  std::vector<State> snapshots;
  Termination termination;
  std::size_t steps = 0;
  NormKind monitored = NormKind::Hs;
};

/// One integrating-factor RK4 step; the linear part is propagated exactly.
State if_rk4_step(const State& state, double dt, const ModelParams& p);
/// Same scheme applied to the diagonal variables.
DiagState if_rk4_step(const DiagState& diag, double dt, const ModelParams& p);
/// In-place step on spectra (the form used by evolve).
void if_rk4_step(const Model& m, Model::Spectra& u, double dt);

/// Throws Error when the initial state breaks the model invariants.
Trajectory evolve(const State& initial, const ModelParams& p, const StepConfig& cfg);

/// First time the norm exceeds factor * norm(0), linear in log-norm between records.
std::optional<double> doubling_time(const Trajectory& traj, NormKind kind, double factor = 2.0);

}  // namespace wblab
