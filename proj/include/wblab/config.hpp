#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "wblab/experiments.hpp"

namespace wblab {

struct ScalingBlock {
  int dim = 1;
  int n = 512;
  double length = 64.0;
  std::vector<double> mus{0.04, 0.25};
  std::vector<double> lambdas{2.0, 8.0};
  double t = 10.0;
  /// Random fields per (mu, lambda), seeded from run.seed.
  int fields = 3;
};

struct RefinedBlock {
  int count = 10;
  double theta = 0.05;
  double gamma = 0.05;
};

struct GronwallBlock {
  std::vector<ModelKind> models{ModelKind::Whitham1D, ModelKind::WB1D, ModelKind::WB2D};
  int count = 10;
};

struct DecayBlock {
  DecayConfig cfg;
  double slope_min = -0.6;
  double slope_max = -0.4;
};

struct StrichartzBlock {
  StrichartzConfig cfg;
  double max_spread = 4.0;
};

struct CommutatorBlock {
  CommutatorConfig cfg;
  double max_spread = 2.0;
};

struct LifespanBlock {
  std::vector<double> eps{0.1, 0.2, 0.4, 0.8};
  std::vector<double> mus{0.1, 0.3, 1.0};
  double monotone_tolerance = 0.05;
  /// Minimum fitted eps exponent a at mu = 1.
  double min_exponent = 1.0;
};

struct CalibrateBlock {
  std::string version = "1";
  bool lifespan = true;
  /// Where constants are written; defaults to <out>/constants.json.
  std::string output;
};

struct NormsBlock {
  /// Snapshot to read; when empty, the [data] spec on [grid] is used.
  std::string snapshot;
};

/// Everything a subcommand needs, validated and with defaults materialized.
///
/// The file is YAML with one mapping per section:
///
///   model:    name, eps, mu, s, h0, allow_linear, allow_low_regularity
///   grid:     n, length            (dim follows the model)
///   data:     spec                 (family(args...); the token `seed` is replaced by run.seed)
///   step:     dt, t_end, cfl_safety, adaptive_dt, blowup_threshold, doubling_factor,
///             stop_on_double, snapshot_every, record_every
///   run:      seed, out, constants
///   decay, strichartz, scaling, refined, commutator, gronwall, lifespan, calibrate, norms
///
/// Scalars are numbers, booleans or strings; lists are YAML sequences.
struct RunConfig {
  ModelParams model;
  bool allow_linear = false;
  bool allow_low_regularity = false;
  int n = 1024;
  double length = 100.53096491487338;
  std::string data = "gaussian(1, 2)";
  StepConfig step;
  std::uint64_t seed = 0;
  std::string out = "out";
  std::string constants = "data/constants.json";

  DecayBlock decay;
  StrichartzBlock strichartz;
  ScalingBlock scaling;
  RefinedBlock refined;
  CommutatorBlock commutator;
  GronwallBlock gronwall;
  LifespanBlock lifespan;
  CalibrateBlock calibrate;
  NormsBlock norms;

  /// Every key with its effective value, "section.key" -> text, in a fixed order.
  std::vector<std::pair<std::string, std::string>> echo;

  Grid grid() const { return Grid(model.dim(), n, length); }
  /// The data spec with `seed` substituted.
  DataSpec data_spec() const;
};

/// Throws ConfigError naming the key on unknown keys, type mismatches and violated invariants.
RunConfig parse_config(const std::string& path);
RunConfig parse_config_text(const std::string& text);

/// Re-validates after --out / --seed overrides and refreshes the echo.
void finalize_config(RunConfig& cfg);

}  // namespace wblab
