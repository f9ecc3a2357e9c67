#include "wblab/config.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "wblab/error.hpp"

namespace wblab {

namespace {

const std::set<std::string> kSections{"model",      "grid",     "data",     "step",      "run",
                                      "decay",      "strichartz", "scaling", "refined",  "commutator",
                                      "gronwall",   "lifespan", "calibrate", "norms"};

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string list(const std::vector<double>& xs) {
  std::string s = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + num(xs[i]);
  return s + "]";
}

/// One YAML mapping; every read marks the key, and finish() rejects what was left.
class Section {
 public:
  Section(const YAML::Node& root, const std::string& name) : name_(name), node_(root[name]) {
    if (node_ && !node_.IsMap()) throw ConfigError(name_ + ": section must be a mapping of key: value");
  }

  template <class T>
  void get(const std::string& key, T& out, const char* what) {
    seen_.insert(key);
    if (!node_ || !node_[key]) return;
    const YAML::Node v = node_[key];
    if (!v.IsScalar()) throw ConfigError(path(key) + ": expected " + what);
    try {
      out = v.as<T>();
    } catch (const YAML::Exception&) {
      throw ConfigError(path(key) + ": expected " + what + ", got '" + v.Scalar() + "'");
    }
  }
  void real(const std::string& key, double& out) { get(key, out, "a number"); }
  void integer(const std::string& key, int& out) { get(key, out, "an integer"); }
  void flag(const std::string& key, bool& out) { get(key, out, "true or false"); }
  void text(const std::string& key, std::string& out) { get(key, out, "a string"); }
  void seed(const std::string& key, std::uint64_t& out) { get(key, out, "a non-negative integer"); }

  void reals(const std::string& key, std::vector<double>& out) {
    seen_.insert(key);
    if (!node_ || !node_[key]) return;
    const YAML::Node v = node_[key];
    if (!v.IsSequence()) throw ConfigError(path(key) + ": expected a list of numbers");
    std::vector<double> xs;
    for (const auto& e : v) {
      try {
        xs.push_back(e.as<double>());
      } catch (const YAML::Exception&) {
        throw ConfigError(path(key) + ": expected a list of numbers");
      }
    }
    if (xs.empty()) throw ConfigError(path(key) + ": list must be non-empty");
    out = std::move(xs);
  }

  void texts(const std::string& key, std::vector<std::string>& out) {
    seen_.insert(key);
    if (!node_ || !node_[key]) return;
    const YAML::Node v = node_[key];
    if (!v.IsSequence()) throw ConfigError(path(key) + ": expected a list of names");
    out.clear();
    for (const auto& e : v) out.push_back(e.as<std::string>());
  }

  void finish() const {
    if (!node_) return;
    for (const auto& kv : node_) {
      const std::string k = kv.first.as<std::string>();
      if (!seen_.count(k)) throw ConfigError("unknown key '" + path(k) + "'");
    }
  }

  std::string path(const std::string& key) const { return name_ + "." + key; }

 private:
  std::string name_;
  const YAML::Node node_;
  std::set<std::string> seen_;
};

void check(bool ok, const std::string& key, const std::string& what) {
  if (!ok) throw ConfigError(key + ": " + what);
}

bool power_of_two(int n) { return n >= 8 && (n & (n - 1)) == 0; }

void validate(const RunConfig& c) {
  try {
    c.model.validate(c.allow_low_regularity, c.allow_linear);
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("model.") + e.what());
  }
  check(power_of_two(c.n), "grid.n", "must be a power of two >= 8");
  check(c.length > 0.0 && std::isfinite(c.length), "grid.length", "must be positive");
  const DataSpec d = c.data_spec();
  if (c.model.model == ModelKind::WB2D && d.family != "potential_gradient" && d.family != "raised_cosine" &&
      d.family != "zero")
    throw ConfigError("data.spec: wb2d needs a curl-free velocity; use potential_gradient or raised_cosine");
  c.step.validate();
  check(c.decay.cfg.d == 1 || c.decay.cfg.d == 2, "decay.d", "must be 1 or 2");
  check(power_of_two(c.decay.cfg.n), "decay.n", "must be a power of two >= 8");
  check(c.decay.cfg.samples >= 4, "decay.samples", "must be >= 4");
  check(c.decay.slope_min < c.decay.slope_max, "decay.slope_min", "must be below decay.slope_max");
  check(c.strichartz.cfg.d == 1 || c.strichartz.cfg.d == 2, "strichartz.d", "must be 1 or 2");
  check(check_admissible(c.strichartz.cfg.pair), "strichartz.q",
        "(q, r) = (" + c.strichartz.cfg.pair.q.str() + ", " + c.strichartz.cfg.pair.r.str() +
            ") is not admissible: need 2/q = d(1/2 - 1/r), 2 < q");
  check(c.strichartz.cfg.time_samples >= 64, "strichartz.time_samples", "must be >= 64");
  for (double m : c.strichartz.cfg.mus) check(m > 0.0 && m <= 1.0, "strichartz.mus", "entries must lie in (0, 1]");
  check(c.scaling.dim == 1 || c.scaling.dim == 2, "scaling.dim", "must be 1 or 2");
  check(power_of_two(c.scaling.n), "scaling.n", "must be a power of two >= 8");
  check(c.scaling.fields >= 1, "scaling.fields", "must be >= 1");
  check(c.refined.count >= 1, "refined.count", "must be >= 1");
  check(c.refined.theta > 0.0, "refined.theta", "must be positive");
  check(c.refined.gamma > 0.0, "refined.gamma", "must be positive");
  check(c.commutator.cfg.d == 1 || c.commutator.cfg.d == 2, "commutator.d", "must be 1 or 2");
  check(power_of_two(c.commutator.cfg.n), "commutator.n", "must be a power of two >= 8");
  check(c.commutator.cfg.per_band >= 1, "commutator.per_band", "must be >= 1");
  for (double m : c.commutator.cfg.mus) check(m > 0.0 && m <= 1.0, "commutator.mus", "entries must lie in (0, 1]");
  check(c.gronwall.count >= 1, "gronwall.count", "must be >= 1");
  for (double e : c.lifespan.eps) check(e >= 0.0 && e <= 1.0, "lifespan.eps", "entries must lie in [0, 1]");
  for (double m : c.lifespan.mus) check(m > 0.0 && m <= 1.0, "lifespan.mus", "entries must lie in (0, 1]");
  check(c.lifespan.monotone_tolerance >= 0.0, "lifespan.monotone_tolerance", "must be >= 0");
}

std::vector<std::pair<std::string, std::string>> build_echo(const RunConfig& c) {
  std::vector<std::pair<std::string, std::string>> e;
  auto b = [](bool x) { return std::string(x ? "true" : "false"); };
  e.emplace_back("model.name", to_string(c.model.model));
  e.emplace_back("model.eps", num(c.model.eps));
  e.emplace_back("model.mu", num(c.model.mu));
  e.emplace_back("model.s", num(c.model.s));
  e.emplace_back("model.h0", num(c.model.h0));
  e.emplace_back("model.allow_linear", b(c.allow_linear));
  e.emplace_back("model.allow_low_regularity", b(c.allow_low_regularity));
  e.emplace_back("grid.dim", std::to_string(c.model.dim()));
  e.emplace_back("grid.n", std::to_string(c.n));
  e.emplace_back("grid.length", num(c.length));
  e.emplace_back("data.spec", c.data_spec().str());
  e.emplace_back("step.dt", num(c.step.dt));
  e.emplace_back("step.t_end", num(c.step.t_end));
  e.emplace_back("step.cfl_safety", num(c.step.cfl_safety));
  e.emplace_back("step.adaptive_dt", b(c.step.adaptive_dt));
  e.emplace_back("step.blowup_threshold", num(c.step.blowup_threshold));
  e.emplace_back("step.doubling_factor", num(c.step.doubling_factor));
  e.emplace_back("step.stop_on_double", b(c.step.stop_on_double));
  e.emplace_back("step.snapshot_every", std::to_string(c.step.snapshot_every));
  e.emplace_back("step.record_every", std::to_string(c.step.record_every));
  e.emplace_back("run.seed", std::to_string(c.seed));
  e.emplace_back("run.out", c.out);
  e.emplace_back("run.constants", c.constants);
  const auto& d = c.decay.cfg;
  e.emplace_back("decay.d", std::to_string(d.d));
  e.emplace_back("decay.mu", num(d.mu));
  e.emplace_back("decay.lambda", num(d.lambda));
  e.emplace_back("decay.n", std::to_string(d.n));
  e.emplace_back("decay.length", num(d.length));
  e.emplace_back("decay.t_min", num(d.t_min));
  e.emplace_back("decay.t_max", num(d.t_max));
  e.emplace_back("decay.samples", std::to_string(d.samples));
  e.emplace_back("decay.width", num(d.width));
  e.emplace_back("decay.slope_min", num(c.decay.slope_min));
  e.emplace_back("decay.slope_max", num(c.decay.slope_max));
  const auto& s = c.strichartz.cfg;
  e.emplace_back("strichartz.d", std::to_string(s.d));
  e.emplace_back("strichartz.mus", list(s.mus));
  e.emplace_back("strichartz.lambdas", list(s.lambdas));
  e.emplace_back("strichartz.q", s.pair.q.str());
  e.emplace_back("strichartz.r", s.pair.r.str());
  e.emplace_back("strichartz.horizon_factor", num(s.horizon_factor));
  e.emplace_back("strichartz.fixed_T", num(s.fixed_T));
  e.emplace_back("strichartz.time_samples", std::to_string(s.time_samples));
  e.emplace_back("strichartz.max_spread", num(c.strichartz.max_spread));
  e.emplace_back("scaling.dim", std::to_string(c.scaling.dim));
  e.emplace_back("scaling.n", std::to_string(c.scaling.n));
  e.emplace_back("scaling.length", num(c.scaling.length));
  e.emplace_back("scaling.mus", list(c.scaling.mus));
  e.emplace_back("scaling.lambdas", list(c.scaling.lambdas));
  e.emplace_back("scaling.t", num(c.scaling.t));
  e.emplace_back("scaling.fields", std::to_string(c.scaling.fields));
  e.emplace_back("refined.count", std::to_string(c.refined.count));
  e.emplace_back("refined.theta", num(c.refined.theta));
  e.emplace_back("refined.gamma", num(c.refined.gamma));
  const auto& k = c.commutator.cfg;
  e.emplace_back("commutator.d", std::to_string(k.d));
  e.emplace_back("commutator.n", std::to_string(k.n));
  e.emplace_back("commutator.length", num(k.length));
  e.emplace_back("commutator.s", num(k.s));
  e.emplace_back("commutator.mus", list(k.mus));
  e.emplace_back("commutator.bands", list(k.bands));
  e.emplace_back("commutator.per_band", std::to_string(k.per_band));
  e.emplace_back("commutator.max_spread", num(c.commutator.max_spread));
  std::string models = "[";
  for (std::size_t i = 0; i < c.gronwall.models.size(); ++i) models += (i ? ", " : "") + to_string(c.gronwall.models[i]);
  e.emplace_back("gronwall.models", models + "]");
  e.emplace_back("gronwall.count", std::to_string(c.gronwall.count));
  e.emplace_back("lifespan.eps", list(c.lifespan.eps));
  e.emplace_back("lifespan.mus", list(c.lifespan.mus));
  e.emplace_back("lifespan.monotone_tolerance", num(c.lifespan.monotone_tolerance));
  e.emplace_back("lifespan.min_exponent", num(c.lifespan.min_exponent));
  e.emplace_back("calibrate.version", c.calibrate.version);
  e.emplace_back("calibrate.lifespan", b(c.calibrate.lifespan));
  e.emplace_back("calibrate.output", c.calibrate.output);
  e.emplace_back("norms.snapshot", c.norms.snapshot);
  return e;
}

RunConfig from_yaml(const YAML::Node& root) {
  if (root && !root.IsNull() && !root.IsMap()) throw ConfigError("config: top level must be a mapping of sections");
  for (const auto& kv : root) {
    const std::string k = kv.first.as<std::string>();
    if (!kSections.count(k)) throw ConfigError("unknown section '" + k + "'");
  }
  RunConfig c;

  Section model(root, "model");
  std::string name = to_string(c.model.model);
  model.text("name", name);
  c.model.model = parse_model(name);
  if (c.model.model == ModelKind::WB2D) c.model.s = 2.3;
  model.real("eps", c.model.eps);
  model.real("mu", c.model.mu);
  model.real("s", c.model.s);
  model.real("h0", c.model.h0);
  model.flag("allow_linear", c.allow_linear);
  model.flag("allow_low_regularity", c.allow_low_regularity);
  model.finish();

  Section grid(root, "grid");
  grid.integer("n", c.n);
  grid.real("length", c.length);
  int dim = c.model.dim();
  grid.integer("dim", dim);
  grid.finish();
  if (dim != c.model.dim())
    throw ConfigError("grid.dim: " + to_string(c.model.model) + " runs in dimension " + std::to_string(c.model.dim()));

  Section data(root, "data");
  data.text("spec", c.data);
  data.finish();

  Section step(root, "step");
  step.real("dt", c.step.dt);
  step.real("t_end", c.step.t_end);
  step.real("cfl_safety", c.step.cfl_safety);
  step.flag("adaptive_dt", c.step.adaptive_dt);
  step.real("blowup_threshold", c.step.blowup_threshold);
  step.real("doubling_factor", c.step.doubling_factor);
  step.flag("stop_on_double", c.step.stop_on_double);
  step.integer("snapshot_every", c.step.snapshot_every);
  step.integer("record_every", c.step.record_every);
  step.finish();

  Section run(root, "run");
  run.seed("seed", c.seed);
  run.text("out", c.out);
  run.text("constants", c.constants);
  run.finish();

  Section decay(root, "decay");
  auto& d = c.decay.cfg;
  decay.integer("d", d.d);
  if (d.d == 2) {
    d.n = 512;
    d.length = 100.0;
    d.t_min = 40.0;
    d.t_max = 175.0;
    d.width = 0.25;
    c.decay.slope_min = -1.15;
    c.decay.slope_max = -0.85;
  }
  decay.real("mu", d.mu);
  decay.real("lambda", d.lambda);
  decay.integer("n", d.n);
  decay.real("length", d.length);
  decay.real("t_min", d.t_min);
  decay.real("t_max", d.t_max);
  decay.integer("samples", d.samples);
  decay.real("width", d.width);
  decay.real("slope_min", c.decay.slope_min);
  decay.real("slope_max", c.decay.slope_max);
  decay.finish();

  Section str(root, "strichartz");
  auto& s = c.strichartz.cfg;
  str.integer("d", s.d);
  std::string q = s.d == 2 ? "4" : "8", r = "4";
  str.text("q", q);
  str.text("r", r);
  try {
    s.pair = {Exponent::parse(q), Exponent::parse(r), s.d};
  } catch (const Error& e) {
    throw ConfigError(std::string("strichartz.q/r: ") + e.what());
  }
  str.reals("mus", s.mus);
  str.reals("lambdas", s.lambdas);
  str.real("horizon_factor", s.horizon_factor);
  str.real("fixed_T", s.fixed_T);
  str.integer("time_samples", s.time_samples);
  str.real("max_spread", c.strichartz.max_spread);
  str.finish();

  Section sc(root, "scaling");
  sc.integer("dim", c.scaling.dim);
  sc.integer("n", c.scaling.n);
  sc.real("length", c.scaling.length);
  sc.reals("mus", c.scaling.mus);
  sc.reals("lambdas", c.scaling.lambdas);
  sc.real("t", c.scaling.t);
  sc.integer("fields", c.scaling.fields);
  sc.finish();

  Section rf(root, "refined");
  rf.integer("count", c.refined.count);
  rf.real("theta", c.refined.theta);
  rf.real("gamma", c.refined.gamma);
  rf.finish();

  Section cm(root, "commutator");
  int cd = 1;
  cm.integer("d", cd);
  c.commutator.cfg = standard_commutator(cd == 2 ? 2 : 1);
  c.commutator.cfg.d = cd;
  auto& k = c.commutator.cfg;
  cm.integer("n", k.n);
  cm.real("length", k.length);
  cm.real("s", k.s);
  cm.reals("mus", k.mus);
  cm.reals("bands", k.bands);
  cm.integer("per_band", k.per_band);
  cm.real("max_spread", c.commutator.max_spread);
  cm.finish();

  Section gr(root, "gronwall");
  std::vector<std::string> names;
  gr.texts("models", names);
  if (!names.empty()) {
    c.gronwall.models.clear();
    for (const auto& n : names) {
      try {
        c.gronwall.models.push_back(parse_model(n));
      } catch (const Error& e) {
        throw ConfigError(std::string("gronwall.models: ") + e.what());
      }
    }
  }
  gr.integer("count", c.gronwall.count);
  gr.finish();

  Section ls(root, "lifespan");
  ls.reals("eps", c.lifespan.eps);
  ls.reals("mus", c.lifespan.mus);
  ls.real("monotone_tolerance", c.lifespan.monotone_tolerance);
  ls.real("min_exponent", c.lifespan.min_exponent);
  ls.finish();

  Section cal(root, "calibrate");
  cal.text("version", c.calibrate.version);
  cal.flag("lifespan", c.calibrate.lifespan);
  cal.text("output", c.calibrate.output);
  cal.finish();

  Section nm(root, "norms");
  nm.text("snapshot", c.norms.snapshot);
  nm.finish();

  finalize_config(c);
  return c;
}

}  // namespace

DataSpec RunConfig::data_spec() const {
  static const std::regex token("\\bseed\\b");
  return DataSpec::parse(std::regex_replace(data, token, std::to_string(seed)));
}

void finalize_config(RunConfig& cfg) {
  validate(cfg);
  cfg.echo = build_echo(cfg);
}

RunConfig parse_config_text(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("config: not valid YAML: ") + e.what());
  }
  return from_yaml(root);
}

RunConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

}  // namespace wblab
