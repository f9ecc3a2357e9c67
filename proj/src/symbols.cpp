#include "wblab/symbols.hpp"

#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>

#include "wblab/error.hpp"

namespace wblab {

double japanese(double x) { return std::sqrt(1.0 + x * x); }

namespace {

void check_mu(double mu) {
  if (!(mu > 0.0 && mu <= 1.0)) {
    std::ostringstream os;
    os << "mu must lie in (0, 1], got " << mu;
    throw Error(os.str());
  }
}

// tanh(x)/x for x >= 0; even Taylor series below 1e-4 avoids cancellation.
double tanhc(double x) {
  if (x < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 3.0 + 2.0 * x2 * x2 / 15.0;
  }
  return std::tanh(x) / x;
}

}  // namespace

double t_mu(double xi_abs, double mu) {
  check_mu(mu);
  return tanhc(std::sqrt(mu) * std::abs(xi_abs));
}

double sqrt_t_mu(double xi_abs, double mu) { return std::sqrt(t_mu(xi_abs, mu)); }

double inv_sqrt_t_mu(double xi_abs, double mu) { return 1.0 / std::sqrt(t_mu(xi_abs, mu)); }

double m_symbol(double xi, int d) {
  const double root = std::sqrt(tanhc(std::abs(xi)));
  return d == 1 ? xi * root : std::abs(xi) * root;
}

double decay_rate(double lambda, double mu, int d) {
  check_mu(mu);
  const double bracket = japanese(std::sqrt(mu) * lambda);
  if (d == 1) return std::pow(mu, -0.5) * std::pow(lambda, -0.5) * std::pow(bracket, 1.25);
  return std::pow(mu, -0.5) * std::pow(bracket, 1.5);
}

double dispersive_time(double lambda, double mu, int d) {
  check_mu(mu);
  const double rhs = std::pow(mu, -0.5) * std::pow(lambda, -0.5 * d - 1.0) *
                     std::pow(japanese(std::sqrt(mu) * lambda), 0.25 * d + 1.0);
  return std::pow(rhs, 2.0 / d);
}

double chi(double s) {
  const double a = std::abs(s);
  if (a <= 1.0) return 1.0;
  if (a >= 2.0) return 0.0;
  const double up = std::exp(-1.0 / (2.0 - a));
  const double down = std::exp(-1.0 / (a - 1.0));
  return up / (up + down);
}

double beta(double s) { return chi(s) - chi(2.0 * s); }

double beta_lambda(double s, double lambda) { return beta(s / lambda); }

std::vector<double> dyadic_bands(const Grid& g) {
  const double lo = 2.0 * g.dk();
  const double hi = (g.n() / 3) * g.dk();
  std::vector<double> out;
  for (int j = -40; j <= 40; ++j) {
    const double lam = std::ldexp(1.0, j);
    if (lam >= lo && lam <= hi) out.push_back(lam);
  }
  return out;
}

Field lp_project(const Field& f, double lambda) {
  if (!(lambda > 0.0)) throw Error("lp_project: lambda must be positive");
  return apply_multiplier(f, SymbolSpec::lp_band(lambda));
}

Field lp_low(const Field& f, double alpha) {
  if (!(alpha > 0.0)) throw Error("lp_low: alpha must be positive");
  return apply_multiplier(f, SymbolSpec::lp_low(alpha));
}

LpDecomposition lp_decompose(const Field& f, double alpha) {
  const Grid& g = f.grid;
  const double kmax = std::sqrt(static_cast<double>(g.dim())) * (g.n() / 2) * g.dk();
  LpDecomposition out{alpha, lp_low(f, alpha), {}, {}};
  // chi(|xi|/lambda) = 1 once lambda >= kmax, so the telescoping sum is complete there.
  for (double lam = 2.0 * alpha; lam / 2.0 < kmax; lam *= 2.0) {
    out.lambdas.push_back(lam);
    out.bands.push_back(lp_project(f, lam));
  }
  return out;
}

Rational Rational::make(std::int64_t num, std::int64_t den) {
  if (den == 0) throw Error("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return {num, den};
}

Rational operator+(Rational a, Rational b) { return Rational::make(a.num * b.den + b.num * a.den, a.den * b.den); }
Rational operator-(Rational a, Rational b) { return Rational::make(a.num * b.den - b.num * a.den, a.den * b.den); }
Rational operator*(Rational a, Rational b) { return Rational::make(a.num * b.num, a.den * b.den); }

double Exponent::value() const {
  return is_infinite() ? kInfinity : static_cast<double>(reciprocal.den) / static_cast<double>(reciprocal.num);
}

Exponent Exponent::parse(std::string_view text) {
  if (text == "inf" || text == "infinity") return infinity();
  auto parse_int = [&](std::string_view t) {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{} || p != t.data() + t.size())
      throw Error("invalid exponent '" + std::string(text) + "'");
    return v;
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return of(parse_int(text));
  const auto num = parse_int(text.substr(0, slash));
  const auto den = parse_int(text.substr(slash + 1));
  if (num <= 0 || den <= 0) throw Error("exponent must be positive: '" + std::string(text) + "'");
  return {Rational::make(den, num)};
}

std::string Exponent::str() const {
  if (is_infinite()) return "inf";
  if (reciprocal.num == 1) return std::to_string(reciprocal.den);
  return std::to_string(reciprocal.den) + "/" + std::to_string(reciprocal.num);
}

bool check_admissible(const Exponent& q, const Exponent& r, int d) {
  const Rational half{1, 2};
  // q > 2  <=>  1/q < 1/2;  r >= 2  <=>  1/r <= 1/2.
  if (q.reciprocal.num < 0 || r.reciprocal.num < 0) return false;
  if (!((q.reciprocal - half).num < 0)) return false;
  if ((r.reciprocal - half).num > 0) return false;
  return Rational{2, 1} * q.reciprocal == Rational{d, 1} * (half - r.reciprocal);
}

SymbolSpec SymbolSpec::tmu(double mu) {
  check_mu(mu);
  return {SymbolKind::TMu, mu};
}
SymbolSpec SymbolSpec::sqrt_tmu(double mu) {
  check_mu(mu);
  return {SymbolKind::SqrtTMu, mu};
}
SymbolSpec SymbolSpec::inv_sqrt_tmu(double mu) {
  check_mu(mu);
  return {SymbolKind::InvSqrtTMu, mu};
}
SymbolSpec SymbolSpec::m(int d, double mu) {
  check_mu(mu);
  return {SymbolKind::MSymbol, mu, static_cast<double>(d)};
}
SymbolSpec SymbolSpec::bessel(double s) { return {SymbolKind::Bessel, 1.0, s}; }
SymbolSpec SymbolSpec::bessel_mu(double s, double mu) {
  check_mu(mu);
  return {SymbolKind::BesselMu, mu, s};
}
SymbolSpec SymbolSpec::abs(double s, double zero_mode_value) {
  return {SymbolKind::HomogeneousAbs, 1.0, s, 1, zero_mode_value};
}
SymbolSpec SymbolSpec::riesz(int j) {
  if (j != 1 && j != 2) throw Error("Riesz component must be 1 or 2");
  return {SymbolKind::RieszComponent, 1.0, 0.0, j};
}
SymbolSpec SymbolSpec::derivative(int j) {
  if (j != 1 && j != 2) throw Error("derivative component must be 1 or 2");
  return {SymbolKind::Derivative, 1.0, 0.0, j};
}
SymbolSpec SymbolSpec::lp_band(double lambda) { return {SymbolKind::LPBand, 1.0, lambda}; }
SymbolSpec SymbolSpec::lp_low(double alpha) { return {SymbolKind::LPLow, 1.0, alpha}; }
SymbolSpec SymbolSpec::product(std::vector<SymbolSpec> factors) {
  SymbolSpec s{SymbolKind::Product};
  s.factors = std::move(factors);
  return s;
}

SymbolSpec operator*(const SymbolSpec& a, const SymbolSpec& b) {
  std::vector<SymbolSpec> f;
  for (const auto* s : {&a, &b}) {
    if (s->kind == SymbolKind::Product)
      f.insert(f.end(), s->factors.begin(), s->factors.end());
    else
      f.push_back(*s);
  }
  return SymbolSpec::product(std::move(f));
}

cplx SymbolSpec::operator()(const Wavevector& w) const {
  const double a = w.abs();
  switch (kind) {
    case SymbolKind::Identity:
      return 1.0;
    case SymbolKind::TMu:
      return t_mu(a, mu);
    case SymbolKind::SqrtTMu:
      return sqrt_t_mu(a, mu);
    case SymbolKind::InvSqrtTMu:
      return inv_sqrt_t_mu(a, mu);
    case SymbolKind::MSymbol: {
      const double rm = std::sqrt(mu);
      const double xi = static_cast<int>(param) == 1 ? w.xi[0] : a;
      return m_symbol(rm * xi, static_cast<int>(param)) / rm;
    }
    case SymbolKind::Bessel:
      return std::pow(japanese(a), param);
    case SymbolKind::BesselMu:
      return std::pow(japanese(std::sqrt(mu) * a), param);
    case SymbolKind::HomogeneousAbs:
      if (a == 0.0) return param > 0.0 ? 0.0 : (param == 0.0 ? 1.0 : zero_mode_value);
      return std::pow(a, param);
    case SymbolKind::RieszComponent:
      if (a == 0.0) return 0.0;
      return cplx(0.0, -w.xi[component - 1] / a);
    case SymbolKind::Derivative:
      return cplx(0.0, w.xi[component - 1]);
    case SymbolKind::LPBand:
      return beta_lambda(a, param);
    case SymbolKind::LPLow:
      return chi(a / param);
    case SymbolKind::Product: {
      cplx acc = 1.0;
      for (const auto& f : factors) acc *= f(w);
      return acc;
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

Symbol SymbolSpec::as_symbol() const {
  return [spec = *this](const Wavevector& w) { return spec(w); };
}

std::string SymbolSpec::name() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind) {
    case SymbolKind::Identity: os << "id"; break;
    case SymbolKind::TMu: os << "tmu"; break;
    case SymbolKind::SqrtTMu: os << "sqrt_tmu"; break;
    case SymbolKind::InvSqrtTMu: os << "inv_sqrt_tmu"; break;
    case SymbolKind::MSymbol: os << "m" << static_cast<int>(param); break;
    case SymbolKind::Bessel: os << "bessel:" << param; break;
    case SymbolKind::BesselMu: os << "bessel_mu:" << param; break;
    case SymbolKind::HomogeneousAbs: os << "abs:" << param; break;
    case SymbolKind::RieszComponent: os << "riesz:" << component; break;
    case SymbolKind::Derivative: os << "dx:" << component; break;
    case SymbolKind::LPBand: os << "lp:" << param; break;
    case SymbolKind::LPLow: os << "lp_low:" << param; break;
    case SymbolKind::Product:
      for (std::size_t i = 0; i < factors.size(); ++i) os << (i ? "*" : "") << factors[i].name();
      break;
  }
  return os.str();
}

namespace {

double parse_double(std::string_view full, std::string_view t) {
  double v = 0.0;
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || p != t.data() + t.size())
    throw Error("invalid numeric argument in symbol '" + std::string(full) + "'");
  return v;
}

SymbolSpec parse_factor(std::string_view full, std::string_view t, double mu) {
  const auto colon = t.find(':');
  const std::string_view head = t.substr(0, colon);
  const bool has_arg = colon != std::string_view::npos;
  auto arg = [&] {
    if (!has_arg) throw Error("symbol '" + std::string(t) + "' needs an argument");
    return parse_double(full, t.substr(colon + 1));
  };
  if (head == "id") return SymbolSpec::identity();
  if (head == "tmu") return SymbolSpec::tmu(mu);
  if (head == "sqrt_tmu") return SymbolSpec::sqrt_tmu(mu);
  if (head == "inv_sqrt_tmu") return SymbolSpec::inv_sqrt_tmu(mu);
  if (head == "m1") return SymbolSpec::m(1, mu);
  if (head == "m2") return SymbolSpec::m(2, mu);
  if (head == "bessel") return SymbolSpec::bessel(arg());
  if (head == "bessel_mu") return SymbolSpec::bessel_mu(arg(), mu);
  if (head == "abs") return SymbolSpec::abs(arg());
  if (head == "riesz") return SymbolSpec::riesz(static_cast<int>(arg()));
  if (head == "dx") return SymbolSpec::derivative(static_cast<int>(arg()));
  if (head == "lp") return SymbolSpec::lp_band(arg());
  if (head == "lp_low") return SymbolSpec::lp_low(arg());
  throw Error("unknown symbol '" + std::string(t) + "'");
}

}  // namespace

SymbolSpec parse_symbol(std::string_view name, double mu) {
  std::vector<SymbolSpec> factors;
  std::size_t start = 0;
  while (true) {
    const auto star = name.find('*', start);
    const auto piece = name.substr(start, star == std::string_view::npos ? std::string_view::npos : star - start);
    if (piece.empty()) throw Error("empty factor in symbol '" + std::string(name) + "'");
    factors.push_back(parse_factor(name, piece, mu));
    if (star == std::string_view::npos) break;
    start = star + 1;
  }
  return factors.size() == 1 ? factors.front() : SymbolSpec::product(std::move(factors));
}

Multiplier make_multiplier(const Grid& g, const SymbolSpec& spec) { return Multiplier(g, spec.as_symbol()); }

Field apply_multiplier(const Field& f, const SymbolSpec& spec) {
  return apply_multiplier(f, spec.as_symbol());
}

}  // namespace wblab
