#pragma once

#include <string>
#include <vector>

#include "wblab/experiments.hpp"

namespace wblab {

inline constexpr int kSchemaVersion = 1;

/// Text table; cells are already formatted.
struct CsvTable {
  std::string schema;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

/// 17 significant digits, "nan"/"inf" for non-finite values.
std::string format_double(double x);

/// Line 1 is "# wblab <schema> schema v<N>", line 2 the header. Throws Error with the path on failure.
void write_csv(const std::string& path, const CsvTable& t);
CsvTable read_csv(const std::string& path);

CsvTable trajectory_table(const Trajectory& traj);
CsvTable sweep_table(const LifespanReport& rep);
CsvTable decay_table(const DecayReport& rep);

/// [u64 little-endian header length][JSON header][f64 little-endian payload, one block per component].
void write_snapshot(const std::string& path, const State& s, const ModelParams& p);
struct LoadedSnapshot {
  State state;
  ModelParams params;
};
LoadedSnapshot read_snapshot(const std::string& path);

/// <dir>/<name>.csv plus <dir>/<name>.json naming the axes.
void emit_plot_data(const std::string& dir, const std::string& name, const CsvTable& t, const std::string& x_label,
                    const std::vector<std::string>& y_labels);

void write_summary(const std::string& path, const ExperimentReport& rep,
                   const std::vector<std::pair<std::string, std::string>>& config_echo);

Constants load_constants(const std::string& path);
void save_constants(const std::string& path, const Constants& k);

void ensure_directory(const std::string& dir);

}  // namespace wblab
