#include <cmath>
#include <random>

#include "doctest.h"
#include "wblab/error.hpp"
#include "wblab/initial_data.hpp"
#include "wblab/spectral.hpp"
#include "wblab/symbols.hpp"

using namespace wblab;

namespace {

Field random_field(const Grid& g, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  Field f(g);
  for (auto& x : f.values) x = nd(rng);
  return f;
}

double max_diff(const Field& a, const Field& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("grid layout") {
  const Grid g1(1, 16, 2.0 * M_PI);
  CHECK(g1.size() == 16);
  CHECK(g1.spectral_size() == 9);
  CHECK(g1.dk() == doctest::Approx(1.0));
  CHECK(g1.signed_index(7) == 7);
  CHECK(g1.signed_index(8) == -8);
  const Grid g2(2, 8, 4.0);
  CHECK(g2.size() == 64);
  CHECK(g2.spectral_size() == 40);
  CHECK(g2.rescaled(2.0).length() == doctest::Approx(2.0));
  CHECK_THROWS_AS(Grid(1, 12, 1.0), Error);
  CHECK_THROWS_AS(Grid(3, 8, 1.0), Error);
  CHECK_THROWS_AS(Grid(1, 8, -1.0), Error);
}

TEST_CASE("unit cosine has coefficient one half") {
  const Grid g(1, 32, 2.0 * M_PI);
  const Field f = cosine(g, 3.0, 1.0);
  const SpectralField sf = forward(f);
  CHECK(std::abs(sf[3] - cplx(0.5, 0.0)) < 1e-15);
  CHECK(std::abs(sf[0]) < 1e-15);
  CHECK(std::abs(sf[2]) < 1e-15);
}

TEST_CASE("round trip is exact to rounding") {
  for (int d : {1, 2}) {
    const Grid g(d, 64, 10.0);
    const Field f = random_field(g, 11 + d);
    CHECK(max_diff(inverse(forward(f)), f) < 1e-13);
    ComplexField c(g);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = cplx(f[i], -0.5 * f[i]);
    const ComplexField back = inverse(forward(c));
    double m = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) m = std::max(m, std::abs(back[i] - c[i]));
    CHECK(m < 1e-13);
  }
}

TEST_CASE("forward rejects non-finite input") {
  const Grid g(1, 16, 1.0);
  Field f(g);
  f[3] = std::nan("");
  CHECK_THROWS_AS(forward(f), NonFiniteError);
}

TEST_CASE("Parseval and expand agree") {
  const Grid g(2, 32, 7.0);
  const Field f = random_field(g, 5);
  const SpectralField sf = forward(f);
  const double l2 = lp_norm(f, 2.0);
  CHECK(l2_norm(sf) == doctest::Approx(l2).epsilon(1e-12));
  const FullSpectrum full = expand(sf);
  CHECK(l2_norm(full) == doctest::Approx(l2).epsilon(1e-12));
  CHECK(imaginary_norm(full) < 1e-12 * l2);
  const Field back = inverse(real_part(full));
  CHECK(max_diff(back, f) < 1e-12);
}

TEST_CASE("derivative multiplier on a sine") {
  const Grid g(1, 64, 2.0 * M_PI);
  Field f(g);
  for (int i = 0; i < g.n(); ++i) f[i] = std::sin(5.0 * g.x(i));
  const Field df = apply_multiplier(f, SymbolSpec::derivative(1));
  double m = 0.0;
  for (int i = 0; i < g.n(); ++i) m = std::max(m, std::abs(df[i] - 5.0 * std::cos(5.0 * g.x(i))));
  CHECK(m < 1e-12);
}

TEST_CASE("multiplier keeps real fields real at the Nyquist line") {
  // An odd symbol would otherwise put an imaginary coefficient on the unpaired mode.
  const Grid g(1, 16, 2.0 * M_PI);
  const Multiplier m(g, SymbolSpec::derivative(1).as_symbol());
  CHECK(std::abs(m[8]) < 1e-15);
  const Multiplier t(g, SymbolSpec::tmu(1.0).as_symbol());
  CHECK(t[8].real() == doctest::Approx(std::tanh(8.0) / 8.0));
}

TEST_CASE("dealias band and projection") {
  const Grid g(1, 128, 2.0 * M_PI);
  Field f = cosine(g, 50.0, 1.0);
  f += cosine(g, 2.0, 1.0);
  const Field d = dealias(f);
  CHECK(max_diff(d, cosine(g, 2.0, 1.0)) < 1e-13);
}

TEST_CASE("lp norms on a constant") {
  const Grid g(2, 16, 3.0);
  Field f(g);
  for (auto& x : f.values) x = 2.0;
  CHECK(lp_norm(f, 1.0) == doctest::Approx(2.0 * 9.0));
  CHECK(lp_norm(f, 2.0) == doctest::Approx(2.0 * 3.0));
  CHECK(lp_norm(f, kInfinity) == doctest::Approx(2.0));
  CHECK(f.integral() == doctest::Approx(18.0));
}

TEST_CASE("rescale_sigma keeps the L1 norm") {
  const Grid g(1, 256, 40.0);
  const Field f = gaussian(g, 1.0, 2.0);
  const Field r = rescale_sigma(f, 2.0);
  CHECK(r.grid.length() == doctest::Approx(20.0));
  CHECK(lp_norm(r, 1.0) == doctest::Approx(lp_norm(f, 1.0)).epsilon(1e-12));
  CHECK(r.max_abs() == doctest::Approx(2.0 * f.max_abs()));
}

TEST_CASE("hermitian weights count the full lattice") {
  const Grid g(2, 8, 1.0);
  double total = 0.0;
  for (std::size_t i = 0; i < g.spectral_size(); ++i) total += hermitian_weight(g, i);
  CHECK(total == doctest::Approx(64.0));
}
