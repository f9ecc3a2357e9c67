#include "wblab/initial_data.hpp"

#include <cctype>
#include <cmath>
#include <random>
#include <sstream>

#include "wblab/error.hpp"

namespace wblab {

namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

void need_args(const DataSpec& d, std::size_t lo, std::size_t hi) {
  if (d.args.size() < lo || d.args.size() > hi) {
    std::ostringstream os;
    os << "data: " << d.family << " takes " << lo;
    if (hi != lo) os << " to " << hi;
    os << " arguments, got " << d.args.size();
    throw ConfigError(os.str());
  }
}

}  // namespace

DataSpec DataSpec::parse(std::string_view text) {
  DataSpec d;
  const std::string t = trim(text);
  const auto open = t.find('(');
  if (open == std::string::npos) {
    d.family = t;
  } else {
    if (t.back() != ')') throw ConfigError("data: missing ')' in '" + t + "'");
    d.family = trim(std::string_view(t).substr(0, open));
    std::string inner = t.substr(open + 1, t.size() - open - 2);
    std::stringstream ss(inner);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const std::string x = trim(item);
      if (x.empty()) continue;
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(x, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != x.size()) throw ConfigError("data: argument '" + x + "' of " + d.family + " is not a number");
      d.args.push_back(v);
    }
  }
  if (d.family == "gaussian") {
    need_args(d, 2, 2);
  } else if (d.family == "cosine") {
    need_args(d, 2, 2);
  } else if (d.family == "raised_cosine") {
    need_args(d, 2, 2);
    if (d.args[1] < 0.0) throw ConfigError("data: raised_cosine amplitude must be >= 0");
  } else if (d.family == "random_band") {
    need_args(d, 4, 4);
  } else if (d.family == "potential_gradient") {
    need_args(d, 4, 5);
  } else if (d.family == "zero") {
    need_args(d, 0, 0);
  } else {
    throw ConfigError("data: unknown family '" + d.family +
                      "' (expected gaussian, cosine, raised_cosine, random_band, potential_gradient, zero)");
  }
  return d;
}

std::string DataSpec::str() const {
  std::ostringstream os;
  os.precision(17);
  os << family;
  if (family == "zero") return os.str();
  os << "(";
  for (std::size_t i = 0; i < args.size(); ++i) os << (i ? ", " : "") << args[i];
  os << ")";
  return os.str();
}

Field gaussian(const Grid& g, double amplitude, double width) {
  if (!(width > 0.0)) throw ConfigError("gaussian: width must be positive");
  Field f(g);
  const double c = 0.5 * g.length();
  const int n = g.n();
  if (g.dim() == 1) {
    for (int i = 0; i < n; ++i) {
      const double x = g.x(i) - c;
      f[i] = amplitude * std::exp(-x * x / (width * width));
    }
    return f;
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double x = g.x(i) - c;
      const double y = g.x(j) - c;
      f[static_cast<std::size_t>(i) * n + j] = amplitude * std::exp(-(x * x + y * y) / (width * width));
    }
  }
  return f;
}

Field cosine(const Grid& g, double k, double amplitude) {
  const double m = k / g.dk();
  if (std::abs(m - std::round(m)) > 1e-9 * std::max(1.0, std::abs(m))) {
    std::ostringstream os;
    os.precision(17);
    os << "cosine: k = " << k << " is not on the lattice 2 pi m / L with L = " << g.length();
    throw ConfigError(os.str());
  }
  Field f(g);
  const int n = g.n();
  const std::size_t stride = g.dim() == 1 ? 1 : static_cast<std::size_t>(n);
  for (int i = 0; i < n; ++i) {
    const double val = amplitude * std::cos(k * g.x(i));
    for (std::size_t j = 0; j < stride; ++j) f[i * stride + j] = val;
  }
  return f;
}

namespace {

// Random complex coefficients on lmin <= |xi| <= lmax, none on Nyquist lines, then
// Hermitian-consistent on the self-conjugate columns of the half layout.
SpectralField random_coefficients(const Grid& g, double lmin, double lmax, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  SpectralField sf(g);
  for_each_mode(g, [&](std::size_t idx, const Wavevector& w) {
    const double a = normal(rng);
    const double b = normal(rng);
    const double r = w.abs();
    if (w.nyquist[0] || w.nyquist[1] || w.is_zero()) return;
    if (r < lmin || r > lmax) return;
    sf[idx] = cplx(a, b);
  });
  const int n = g.n();
  const int h = g.half_n();
  if (g.dim() == 1) {
    sf[0] = sf[0].real();
    return sf;
  }
  for (int j : {0, n / 2}) {
    for (int i = n / 2 + 1; i < n; ++i) {
      sf[static_cast<std::size_t>(i) * h + j] = std::conj(sf[static_cast<std::size_t>(n - i) * h + j]);
    }
    sf[j] = sf[j].real();
  }
  return sf;
}

}  // namespace

Field random_band(const Grid& g, double lmin, double lmax, std::uint64_t seed, double amplitude) {
  if (!(lmax >= lmin) || lmin < 0.0) throw ConfigError("random_band: need 0 <= lmin <= lmax");
  Field f = inverse(random_coefficients(g, lmin, lmax, seed));
  const double m = f.max_abs();
  if (m == 0.0) throw ConfigError("random_band: band contains no lattice frequency");
  f *= amplitude / m;
  return f;
}

std::vector<Field> potential_gradient(const Grid& g, double lmin, double lmax, std::uint64_t seed,
                                      double amplitude) {
  const SpectralField phi = random_coefficients(g, lmin, lmax, seed);
  std::vector<Field> v;
  for (int j = 0; j < g.dim(); ++j) {
    SpectralField d = phi;
    for_each_mode(g, [&](std::size_t idx, const Wavevector& w) { d[idx] *= cplx(0.0, w.xi[j]); });
    v.push_back(inverse(d));
  }
  double m = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    double s = 0.0;
    for (const auto& c : v) s += c[i] * c[i];
    m = std::max(m, std::sqrt(s));
  }
  if (m == 0.0) throw ConfigError("potential_gradient: band contains no lattice frequency");
  for (auto& c : v) c *= amplitude / m;
  return v;
}

State make_initial_state(const Grid& g, const ModelParams& p, const DataSpec& spec) {
  if (g.dim() != p.dim()) throw ConfigError("grid.dim: model " + to_string(p.model) + " needs dim " + std::to_string(p.dim()));
  State s = zero_state(g, p);
  const auto& a = spec.args;
  if (spec.family == "gaussian") {
    s.eta = gaussian(g, a[0], a[1]);
  } else if (spec.family == "cosine") {
    s.eta = cosine(g, a[0], a[1]);
  } else if (spec.family == "raised_cosine") {
    // eta >= 0, and for WB the long-wave right-going velocity v_1 = eta - mean(eta).
    Field c = cosine(g, a[0], 0.5 * a[1]);
    s.eta = c;
    for (std::size_t i = 0; i < s.eta.size(); ++i) s.eta[i] += 0.5 * a[1];
    if (p.has_velocity()) s.v[0] = c;
  } else if (spec.family == "random_band") {
    s.eta = random_band(g, a[0], a[1], static_cast<std::uint64_t>(a[2]), a[3]);
  } else if (spec.family == "potential_gradient") {
    const auto seed = static_cast<std::uint64_t>(a[0]);
    const double av = a.size() > 4 ? a[4] : a[3];
    s.eta = random_band(g, a[1], a[2], seed + 1, a[3]);
    if (p.has_velocity()) s.v = potential_gradient(g, a[1], a[2], seed, av);
  } else if (spec.family != "zero") {
    throw ConfigError("data: unknown family '" + spec.family + "'");
  }
  return s;
}

}  // namespace wblab
