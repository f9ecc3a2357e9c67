#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "wblab/app.hpp"
#include "wblab/config.hpp"
#include "wblab/error.hpp"
#include "wblab/experiments.hpp"
#include "wblab/io.hpp"

namespace py = pybind11;
using namespace wblab;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

Grid grid_of(const py::buffer_info& b, double length) {
  if (b.ndim == 1) return Grid(1, static_cast<int>(b.shape[0]), length);
  if (b.ndim == 2 && b.shape[0] == b.shape[1]) return Grid(2, static_cast<int>(b.shape[0]), length);
  throw ConfigError("expected a 1D array or a square 2D array");
}

Field to_field(const Array& a, double length) {
  const auto b = a.request();
  const Grid g = grid_of(b, length);
  const double* p = static_cast<const double*>(b.ptr);
  return Field(g, std::vector<double>(p, p + g.size()));
}

py::array_t<double> to_array(const Field& f) {
  std::vector<py::ssize_t> shape(f.grid.dim(), f.grid.n());
  py::array_t<double> out(shape);
  std::copy(f.values.begin(), f.values.end(), out.mutable_data());
  return out;
}

py::array_t<std::complex<double>> to_array(const ComplexField& f) {
  std::vector<py::ssize_t> shape(f.grid.dim(), f.grid.n());
  py::array_t<std::complex<double>> out(shape);
  std::copy(f.values.begin(), f.values.end(), out.mutable_data());
  return out;
}

ModelParams make_params(const std::string& model, double eps, double mu, std::optional<double> s, double h0) {
  ModelParams p;
  p.model = parse_model(model);
  p.eps = eps;
  p.mu = mu;
  p.s = s.value_or(p.model == ModelKind::WB2D ? 2.3 : 1.7);
  p.h0 = h0;
  return p;
}

py::dict norm_dict(const NormReport& r) {
  py::dict d;
  d["hs"] = r.hs;
  d["vsmu"] = r.vsmu;
  d["linf_eta"] = r.linf_eta;
  d["linf_v"] = r.linf_v;
  d["p_of_t"] = r.p_of_t;
  d["h_of_t"] = r.h_of_t;
  d["h_min"] = r.h_min;
  d["mass"] = r.mass;
  d["energy"] = r.energy;
  return d;
}

py::dict state_dict(const State& s) {
  py::dict d;
  d["t"] = s.t;
  d["eta"] = to_array(s.eta);
  py::list v;
  for (const auto& c : s.v) v.append(to_array(c));
  d["v"] = v;
  return d;
}

py::dict constants_dict(const Constants& k) {
  py::dict d;
  d["version"] = k.version;
  d["gronwall_whitham"] = k.gronwall_whitham;
  d["gronwall_wb1d"] = k.gronwall_wb1d;
  d["gronwall_wb2d"] = k.gronwall_wb2d;
  d["coercive_c1"] = k.coercive_c1;
  d["coercive_c2"] = k.coercive_c2;
  d["strichartz_1d"] = k.strichartz_1d;
  d["strichartz_2d"] = k.strichartz_2d;
  d["commutator_tilbert"] = k.commutator_tilbert;
  d["commutator_inv_tilbert"] = k.commutator_inv_tilbert;
  d["refined"] = k.refined;
  d["kappa_whitham"] = k.kappa_whitham;
  d["kappa_wb1d"] = k.kappa_wb1d;
  d["kappa_wb2d"] = k.kappa_wb2d;
  return d;
}

}  // namespace

PYBIND11_MODULE(_wblab, m) {
  m.doc() = "Whitham and Whitham-Boussinesq dispersive lab";

  // Translators are tried newest first, so the subclass goes last.
  py::register_exception<Error>(m, "WblabError", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  m.def("t_mu", &t_mu, py::arg("xi"), py::arg("mu"));
  m.def("m_symbol", &m_symbol, py::arg("xi"), py::arg("d") = 1);
  m.def("decay_rate", &decay_rate, py::arg("lam"), py::arg("mu"), py::arg("d") = 1);
  m.def(
      "check_admissible",
      [](const std::string& q, const std::string& r, int d) {
        return check_admissible(Exponent::parse(q), Exponent::parse(r), d);
      },
      py::arg("q"), py::arg("r"), py::arg("d"));
  m.def("theorem_time",
        [](const std::string& model, double eps, double mu, double norm) {
          return theorem_time(parse_model(model), eps, mu, norm);
        },
        py::arg("model"), py::arg("eps"), py::arg("mu"), py::arg("data_norm"));

  m.def("forward",
        [](const Array& f, double length) {
          const SpectralField sf = forward(to_field(f, length));
          return py::array_t<std::complex<double>>(static_cast<py::ssize_t>(sf.size()), sf.coeffs.data());
        },
        py::arg("f"), py::arg("length"), "Half spectrum with 1/n^d normalization, flattened.");
  m.def("sobolev_norm",
        [](const Array& f, double length, double s) { return sobolev_norm(to_field(f, length), s); },
        py::arg("f"), py::arg("length"), py::arg("s"));
  m.def("lp_norm", [](const Array& f, double length, double p) { return lp_norm(to_field(f, length), p); },
        py::arg("f"), py::arg("length"), py::arg("p"));
  m.def("propagate",
        [](const Array& f, double length, double mu, double t, int sign) {
          return to_array(linear_propagate(to_field(f, length), t, mu, sign));
        },
        py::arg("f"), py::arg("length"), py::arg("mu"), py::arg("t"), py::arg("sign") = 1,
        "exp(sign i t (1/sqrt mu) m_d(sqrt mu D)) f.");
  m.def("apply_symbol",
        [](const Array& f, double length, const std::string& name, double mu) {
          return to_array(apply_multiplier(to_field(f, length), parse_symbol(name, mu)));
        },
        py::arg("f"), py::arg("length"), py::arg("symbol"), py::arg("mu") = 1.0);

  m.def("initial_state",
        [](const std::string& model, int n, double length, const std::string& data, double eps, double mu,
           double h0) {
          const ModelParams p = make_params(model, eps, mu, std::nullopt, h0);
          return state_dict(make_initial_state(Grid(p.dim(), n, length), p, DataSpec::parse(data)));
        },
        py::arg("model"), py::arg("n"), py::arg("length"), py::arg("data"), py::arg("eps") = 0.1,
        py::arg("mu") = 1.0, py::arg("h0") = 0.5);

  m.def("simulate",
        [](const std::string& model, double eps, double mu, int n, double length, const std::string& data,
           double dt, double t_end, std::optional<double> s, double h0, bool stop_on_double, int record_every) {
          const ModelParams p = make_params(model, eps, mu, s, h0);
          const State init = make_initial_state(Grid(p.dim(), n, length), p, DataSpec::parse(data));
          StepConfig c;
          c.dt = dt;
          c.t_end = t_end;
          c.stop_on_double = stop_on_double;
          c.record_every = record_every;
          Trajectory tr;
          {
            py::gil_scoped_release release;
            tr = evolve(init, p, c);
          }
          py::dict out;
          out["times"] = tr.times;
          py::list recs;
          for (const auto& r : tr.records) recs.append(norm_dict(r));
          out["records"] = recs;
          out["termination"] = to_string(tr.termination.kind);
          out["termination_time"] = tr.termination.time;
          out["steps"] = tr.steps;
          const auto td = doubling_time(tr, tr.monitored);
          out["t_double"] = td ? py::cast(*td) : py::none();
          return out;
        },
        py::arg("model"), py::arg("eps"), py::arg("mu"), py::arg("n"), py::arg("length"), py::arg("data"),
        py::arg("dt") = 0.01, py::arg("t_end") = 1.0, py::arg("s") = py::none(), py::arg("h0") = 0.5,
        py::arg("stop_on_double") = true, py::arg("record_every") = 1);

  m.def("norms",
        [](const std::string& model, const Array& eta, const std::vector<Array>& v, double length, double eps,
           double mu, std::optional<double> s, double h0) {
          const ModelParams p = make_params(model, eps, mu, s, h0);
          std::vector<Field> vf;
          for (const auto& c : v) vf.push_back(to_field(c, length));
          return norm_dict(norm_report(State(to_field(eta, length), vf), p));
        },
        py::arg("model"), py::arg("eta"), py::arg("v") = std::vector<Array>{}, py::arg("length") = 1.0,
        py::arg("eps") = 0.1, py::arg("mu") = 1.0, py::arg("s") = py::none(), py::arg("h0") = 0.5);

  m.def("diagonalize",
        [](const Array& eta, const std::vector<Array>& v, double length, double mu) {
          std::vector<Field> vf;
          for (const auto& c : v) vf.push_back(to_field(c, length));
          const DiagState d = diagonalize(State(to_field(eta, length), vf), mu);
          return py::make_tuple(to_array(d.u_plus), to_array(d.u_minus));
        },
        py::arg("eta"), py::arg("v"), py::arg("length"), py::arg("mu"));

  m.def("decay_test",
        [](int d, double mu, double lam) {
          // The 2D window defaults live with the config grammar.
          DecayConfig c = parse_config_text("decay:\n  d: " + std::to_string(d) + "\n").decay.cfg;
          c.mu = mu;
          c.lambda = lam;
          DecayReport r;
          {
            py::gil_scoped_release release;
            r = decay_experiment(c);
          }
          py::dict out;
          out["slope"] = r.fit.exponent;
          out["r_squared"] = r.fit.r_squared;
          out["max_bound_ratio"] = r.max_bound_ratio;
          std::vector<double> ts, ls;
          for (const auto& s : r.samples) {
            ts.push_back(s.t);
            ls.push_back(s.linf);
          }
          out["t"] = ts;
          out["linf"] = ls;
          return out;
        },
        py::arg("d") = 1, py::arg("mu") = 1.0, py::arg("lam") = 8.0);

  m.def("strichartz_ratio",
        [](int d, int n, double length, double mu, double lam, const std::string& q, const std::string& r, double T) {
          const AdmissiblePair pair{Exponent::parse(q), Exponent::parse(r), d};
          return strichartz_ratio(Grid(d, n, length), mu, lam, pair, T, 96);
        },
        py::arg("d"), py::arg("n"), py::arg("length"), py::arg("mu"), py::arg("lam"), py::arg("q"), py::arg("r"),
        py::arg("T"));

  m.def("scaling_error",
        [](const Array& f, double length, double mu, double lam, double t) {
          const ScalingResult r = scaling_identity_test(mu, lam, t, to_field(f, length));
          return r.max_error / r.sup_f;
        },
        py::arg("f"), py::arg("length"), py::arg("mu"), py::arg("lam"), py::arg("t"));

  m.def("lifespan_sweep",
        [](const std::string& model, std::vector<double> eps, std::vector<double> mus, std::optional<int> n,
           double amplitude_scale) {
          LifespanConfig c = standard_lifespan(parse_model(model), amplitude_scale);
          c.eps = std::move(eps);
          c.mus = std::move(mus);
          if (n) c.n = *n;
          LifespanReport r;
          {
            py::gil_scoped_release release;
            r = lifespan_sweep(c);
          }
          py::list pts;
          for (const auto& p : r.points) {
            py::dict d;
            d["eps"] = p.eps;
            d["mu"] = p.mu;
            d["t_double"] = p.t_double ? py::cast(*p.t_double) : py::none();
            d["theorem_time"] = p.theorem_time;
            d["excluded"] = p.excluded;
            pts.append(d);
          }
          py::dict out;
          out["points"] = pts;
          out["monotone_eps"] = r.monotone_eps;
          out["monotone_mu"] = r.monotone_mu;
          out["min_theorem_ratio"] = r.min_theorem_ratio;
          py::dict fits;
          for (const auto& [mu, f] : r.eps_fits) fits[py::float_(mu)] = f.exponent;
          out["eps_exponents"] = fits;
          return out;
        },
        py::arg("model"), py::arg("eps") = std::vector<double>{0.1, 0.2, 0.4, 0.8},
        py::arg("mus") = std::vector<double>{0.1, 0.3, 1.0}, py::arg("n") = py::none(),
        py::arg("amplitude_scale") = 1.0);

  m.def("load_constants", [](const std::string& path) { return constants_dict(load_constants(path)); },
        py::arg("path"));

  m.def("subcommands", &subcommands);
  m.def("run",
        [](const std::string& sub, const std::string& config, std::optional<std::string> out,
           std::optional<std::uint64_t> seed) {
          RunConfig cfg = parse_config(config);
          if (out) cfg.out = *out;
          if (seed) cfg.seed = *seed;
          finalize_config(cfg);
          std::ostringstream log;
          int code;
          {
            py::gil_scoped_release release;
            code = run(sub, cfg, log);
          }
          return py::make_tuple(code, log.str());
        },
        py::arg("subcommand"), py::arg("config"), py::arg("out") = py::none(), py::arg("seed") = py::none(),
        "Runs a CLI subcommand; returns (exit code, log text).");
}
