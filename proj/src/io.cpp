#include "wblab/io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "wblab/error.hpp"

namespace wblab {

using nlohmann::ordered_json;

namespace {

std::ofstream open_out(const std::string& path, std::ios::openmode mode = std::ios::out) {
  std::ofstream out(path, mode | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  return out;
}

void close_checked(std::ofstream& out, const std::string& path) {
  out.close();
  if (!out) throw Error("write to '" + path + "' failed");
}

template <class T>
T to_little(T v) {
  if constexpr (std::endian::native == std::endian::little) {
    return v;
  } else {
    unsigned char b[sizeof(T)];
    std::memcpy(b, &v, sizeof(T));
    std::reverse(b, b + sizeof(T));
    std::memcpy(&v, b, sizeof(T));
    return v;
  }
}

ordered_json fit_json(const FitResult& f) {
  return {{"exponent", f.exponent},   {"intercept", f.intercept}, {"r_squared", f.r_squared},
          {"n_points", f.n_points},   {"window", {f.window_lo, f.window_hi}},
          {"trimmed", f.trimmed}};
}

// JSON has no NaN or infinity.
ordered_json number(double x) {
  if (std::isfinite(x)) return x;
  return format_double(x);
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void ensure_directory(const std::string& dir) {
  if (dir.empty()) return;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("cannot create directory '" + dir + "': " + ec.message());
}

void write_csv(const std::string& path, const CsvTable& t) {
  auto out = open_out(path);
  out << "# wblab " << t.schema << " schema v" << kSchemaVersion << "\n";
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
  out << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << "\n";
  }
  close_checked(out, path);
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  CsvTable t;
  std::string line;
  auto split = [](const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!s.empty() && s.back() == ',') out.emplace_back();
    return out;
  };
  if (!std::getline(in, line) || line.rfind("# wblab ", 0) != 0) throw Error("'" + path + "': missing schema line");
  {
    std::stringstream ss(line.substr(8));
    ss >> t.schema;
  }
  if (!std::getline(in, line)) throw Error("'" + path + "': missing header");
  t.columns = split(line);
  while (std::getline(in, line))
    if (!line.empty()) t.rows.push_back(split(line));
  return t;
}

CsvTable trajectory_table(const Trajectory& traj) {
  CsvTable t;
  t.schema = "trajectory";
  t.columns = {"t", "hs_norm", "vsmu_norm", "linf_eta", "linf_v", "p_of_t", "h_of_t", "h_min", "mass", "energy"};
  for (std::size_t i = 0; i < traj.records.size(); ++i) {
    const auto& r = traj.records[i];
    t.rows.push_back({format_double(traj.times[i]), format_double(r.hs), format_double(r.vsmu),
                      format_double(r.linf_eta), format_double(r.linf_v), format_double(r.p_of_t),
                      format_double(r.h_of_t), format_double(r.h_min), format_double(r.mass),
                      format_double(r.energy)});
  }
  return t;
}

CsvTable sweep_table(const LifespanReport& rep) {
  CsvTable t;
  t.schema = "sweep";
  t.columns = {"eps", "mu", "t_double", "termination", "excluded", "fit_group", "theorem_time", "data_norm", "steps"};
  for (const auto& p : rep.points) {
    t.rows.push_back({format_double(p.eps), format_double(p.mu), p.t_double ? format_double(*p.t_double) : "none",
                      to_string(p.termination.kind), p.excluded ? "1" : "0", "mu=" + format_double(p.mu),
                      format_double(p.theorem_time), format_double(p.data_norm), std::to_string(p.steps)});
  }
  return t;
}

CsvTable decay_table(const DecayReport& rep) {
  CsvTable t;
  t.schema = "decay";
  t.columns = {"t", "linf", "bound_ratio"};
  for (const auto& s : rep.samples)
    t.rows.push_back({format_double(s.t), format_double(s.linf), format_double(s.bound_ratio)});
  return t;
}

void write_snapshot(const std::string& path, const State& s, const ModelParams& p) {
  const Grid& g = s.grid();
  ordered_json h;
  h["schema"] = "wblab-snapshot";
  h["version"] = kSchemaVersion;
  h["grid"] = {{"dim", g.dim()}, {"n", g.n()}, {"length", g.length()}};
  h["params"] = {{"model", to_string(p.model)}, {"eps", p.eps}, {"mu", p.mu}, {"s", p.s}, {"h0", p.h0}};
  h["time"] = s.t;
  std::vector<std::string> comps{"eta"};
  for (std::size_t j = 0; j < s.v.size(); ++j) comps.push_back("v" + std::to_string(j + 1));
  h["components"] = comps;
  const std::string header = h.dump();

  auto out = open_out(path, std::ios::binary);
  const std::uint64_t len = to_little<std::uint64_t>(header.size());
  out.write(reinterpret_cast<const char*>(&len), sizeof len);
  out.write(header.data(), static_cast<std::streamsize>(header.size()));
  auto block = [&](const Field& f) {
    for (double x : f.values) {
      const double le = to_little(x);
      out.write(reinterpret_cast<const char*>(&le), sizeof le);
    }
  };
  block(s.eta);
  for (const auto& c : s.v) block(c);
  close_checked(out, path);
}

LoadedSnapshot read_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open snapshot '" + path + "'");
  std::uint64_t len = 0;
  if (!in.read(reinterpret_cast<char*>(&len), sizeof len)) throw Error("'" + path + "': truncated header length");
  len = to_little(len);
  if (len > (1u << 24)) throw Error("'" + path + "': implausible header length");
  std::string header(len, '\0');
  if (!in.read(header.data(), static_cast<std::streamsize>(len))) throw Error("'" + path + "': truncated header");
  ordered_json h;
  try {
    h = ordered_json::parse(header);
  } catch (const std::exception& e) {
    throw Error("'" + path + "': bad header: " + e.what());
  }
  if (h.value("schema", "") != "wblab-snapshot") throw Error("'" + path + "': not a wblab snapshot");
  const Grid g(h["grid"]["dim"].get<int>(), h["grid"]["n"].get<int>(), h["grid"]["length"].get<double>());
  ModelParams p;
  p.model = parse_model(h["params"]["model"].get<std::string>());
  p.eps = h["params"]["eps"].get<double>();
  p.mu = h["params"]["mu"].get<double>();
  p.s = h["params"]["s"].get<double>();
  p.h0 = h["params"]["h0"].get<double>();
  const auto comps = h["components"].get<std::vector<std::string>>();
  auto block = [&]() {
    Field f(g);
    for (auto& x : f.values) {
      double le;
      if (!in.read(reinterpret_cast<char*>(&le), sizeof le)) throw Error("'" + path + "': payload shorter than grid");
      x = to_little(le);
    }
    return f;
  };
  State s(g);
  s.t = h["time"].get<double>();
  s.eta = block();
  for (std::size_t j = 1; j < comps.size(); ++j) s.v.push_back(block());
  if (in.peek() != std::char_traits<char>::eof()) throw Error("'" + path + "': payload longer than grid");
  return {std::move(s), p};
}

void emit_plot_data(const std::string& dir, const std::string& name, const CsvTable& t, const std::string& x_label,
                    const std::vector<std::string>& y_labels) {
  ensure_directory(dir);
  write_csv(dir + "/" + name + ".csv", t);
  ordered_json j;
  j["data"] = name + ".csv";
  j["x"] = x_label;
  j["y"] = y_labels;
  j["columns"] = t.columns;
  const std::string path = dir + "/" + name + ".json";
  auto out = open_out(path);
  out << j.dump(2) << "\n";
  close_checked(out, path);
}

void write_summary(const std::string& path, const ExperimentReport& rep,
                   const std::vector<std::pair<std::string, std::string>>& config_echo) {
  ordered_json j;
  j["name"] = rep.name;
  j["schema_version"] = kSchemaVersion;
  j["note"] = "numerical consistency evidence, not a proof";
  j["pass"] = rep.pass;
  j["tolerance"] = rep.tolerance;
  ordered_json params = ordered_json::object();
  for (const auto& [k, v] : rep.params) params[k] = v;
  j["params"] = params;
  ordered_json metrics = ordered_json::object();
  for (const auto& [k, v] : rep.metrics) metrics[k] = number(v);
  j["metrics"] = metrics;
  ordered_json fits = ordered_json::object();
  for (const auto& [k, f] : rep.fits) fits[k] = fit_json(f);
  j["fits"] = fits;
  j["notes"] = rep.notes;
  j["provenance"] = {{"seed", rep.provenance.seed},
                     {"grid", rep.provenance.grid},
                     {"threads", rep.provenance.threads},
                     {"constants_version", rep.provenance.constants_version}};
  ordered_json cfg = ordered_json::object();
  for (const auto& [k, v] : config_echo) cfg[k] = v;
  j["config"] = cfg;
  auto out = open_out(path);
  out << j.dump(2) << "\n";
  close_checked(out, path);
}

Constants load_constants(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open constants file '" + path + "'");
  ordered_json j;
  try {
    j = ordered_json::parse(in);
  } catch (const std::exception& e) {
    throw Error("'" + path + "': " + e.what());
  }
  Constants k;
  auto get = [&](const char* key, double& out) {
    if (!j.contains(key)) throw Error("'" + path + "': missing constant '" + key + "'");
    out = j[key].get<double>();
  };
  k.version = j.value("version", "unset");
  get("gronwall_whitham", k.gronwall_whitham);
  get("gronwall_wb1d", k.gronwall_wb1d);
  get("gronwall_wb2d", k.gronwall_wb2d);
  get("coercive_c1", k.coercive_c1);
  get("coercive_c2", k.coercive_c2);
  get("strichartz_1d", k.strichartz_1d);
  get("strichartz_2d", k.strichartz_2d);
  get("commutator_tilbert", k.commutator_tilbert);
  get("commutator_inv_tilbert", k.commutator_inv_tilbert);
  get("refined", k.refined);
  get("kappa_whitham", k.kappa_whitham);
  get("kappa_wb1d", k.kappa_wb1d);
  get("kappa_wb2d", k.kappa_wb2d);
  return k;
}

void save_constants(const std::string& path, const Constants& k) {
  ordered_json j;
  j["version"] = k.version;
  j["gronwall_whitham"] = k.gronwall_whitham;
  j["gronwall_wb1d"] = k.gronwall_wb1d;
  j["gronwall_wb2d"] = k.gronwall_wb2d;
  j["coercive_c1"] = k.coercive_c1;
  j["coercive_c2"] = k.coercive_c2;
  j["strichartz_1d"] = k.strichartz_1d;
  j["strichartz_2d"] = k.strichartz_2d;
  j["commutator_tilbert"] = k.commutator_tilbert;
  j["commutator_inv_tilbert"] = k.commutator_inv_tilbert;
  j["refined"] = k.refined;
  j["kappa_whitham"] = k.kappa_whitham;
  j["kappa_wb1d"] = k.kappa_wb1d;
  j["kappa_wb2d"] = k.kappa_wb2d;
  auto out = open_out(path);
  out << j.dump(2) << "\n";
  close_checked(out, path);
}

}  // namespace wblab
