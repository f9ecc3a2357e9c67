#include <cmath>

#include "doctest.h"
#include "wblab/error.hpp"
#include "wblab/initial_data.hpp"
#include "wblab/symbols.hpp"

using namespace wblab;

TEST_CASE("japanese bracket and T_mu") {
  CHECK(japanese(0.0) == 1.0);
  CHECK(japanese(3.0) == doctest::Approx(std::sqrt(10.0)));
  CHECK(t_mu(0.0, 1.0) == 1.0);
  CHECK(t_mu(1.0, 1.0) == doctest::Approx(0.76159415595576489));
  CHECK(t_mu(2.0, 0.25) == doctest::Approx(0.76159415595576489));
  CHECK(sqrt_t_mu(2.0, 1.0) * sqrt_t_mu(2.0, 1.0) == doctest::Approx(t_mu(2.0, 1.0)));
  CHECK(inv_sqrt_t_mu(2.0, 1.0) * sqrt_t_mu(2.0, 1.0) == doctest::Approx(1.0));
  // Small argument: 1 - x^2/3 without cancellation.
  CHECK(t_mu(1e-9, 1.0) == doctest::Approx(1.0));
}

TEST_CASE("m symbol parity and limits") {
  CHECK(m_symbol(0.0, 1) == 0.0);
  CHECK(m_symbol(-2.0, 1) == doctest::Approx(-m_symbol(2.0, 1)));
  CHECK(m_symbol(-2.0, 2) == doctest::Approx(m_symbol(2.0, 2)));
  CHECK(m_symbol(1.0, 1) == doctest::Approx(0.87269566371098541));
  // Long waves move at unit speed.
  CHECK(m_symbol(1e-6, 1) / 1e-6 == doctest::Approx(1.0));
}

TEST_CASE("decay rate and dispersive time") {
  CHECK(decay_rate(8.0, 1.0, 1) == doctest::Approx(std::pow(8.0, -0.5) * std::pow(std::sqrt(65.0), 1.25)));
  CHECK(decay_rate(8.0, 1.0, 2) == doctest::Approx(std::pow(std::sqrt(65.0), 1.5)));
  const double t = dispersive_time(8.0, 1.0, 1);
  // mu^{-1/2} t^{-1/2} A = lambda at the crossover.
  CHECK(std::pow(t, -0.5) * decay_rate(8.0, 1.0, 1) == doctest::Approx(8.0));
}

TEST_CASE("Littlewood-Paley cutoffs") {
  CHECK(chi(0.0) == 1.0);
  CHECK(chi(1.0) == 1.0);
  CHECK(chi(2.0) == 0.0);
  CHECK(chi(1.5) == doctest::Approx(0.5));
  CHECK(beta(0.4) == 0.0);
  CHECK(beta(2.1) == 0.0);
  CHECK(beta(1.0) == 1.0);
  // Partition of unity: chi(s) + sum_j beta(s / 2^j) = 1.
  for (double s : {0.3, 1.7, 5.2, 33.0}) {
    double sum = chi(s);
    for (int j = 1; j < 10; ++j) sum += beta(s / std::pow(2.0, j));
    CHECK(sum == doctest::Approx(1.0));
  }
}

TEST_CASE("lp decomposition sums back to the field") {
  const Grid g(1, 256, 20.0 * M_PI);
  const Field f = random_band(g, 0.0, 3.0, 4, 1.0);
  const LpDecomposition dec = lp_decompose(f, 0.25);
  Field sum = dec.low;
  for (const auto& b : dec.bands) sum += b;
  double m = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) m = std::max(m, std::abs(sum[i] - f[i]));
  CHECK(m < 1e-12);
}

TEST_CASE("rational exponents and admissibility") {
  CHECK(Rational::make(2, -4) == Rational{-1, 2});
  CHECK(Rational::make(1, 3) + Rational::make(1, 6) == Rational{1, 2});
  CHECK(Exponent::parse("inf").is_infinite());
  CHECK(Exponent::parse("5/2").value() == doctest::Approx(2.5));
  CHECK(Exponent::parse("8").str() == "8");
  CHECK_THROWS_AS(Exponent::parse("abc"), Error);
  CHECK(check_admissible(Exponent::of(8), Exponent::of(4), 1));
  CHECK(check_admissible(Exponent::of(4), Exponent::of(4), 2));
  CHECK(check_admissible(Exponent::of(4), Exponent::infinity(), 1));
  CHECK(check_admissible(Exponent::of(21, 10), Exponent::of(42), 2));
  CHECK_FALSE(check_admissible(Exponent::of(2), Exponent::infinity(), 2));
  CHECK_FALSE(check_admissible(Exponent::of(8), Exponent::of(4), 2));
}

TEST_CASE("symbol registry") {
  Wavevector w;
  w.xi = {2.0, 0.0};
  w.k = {2, 0};
  CHECK(parse_symbol("tmu", 0.5)(w).real() == doctest::Approx(t_mu(2.0, 0.5)));
  CHECK(parse_symbol("bessel:2")(w).real() == doctest::Approx(5.0));
  CHECK(parse_symbol("dx:1")(w) == cplx(0.0, 2.0));
  CHECK(parse_symbol("abs:1*tmu", 1.0)(w).real() == doctest::Approx(2.0 * t_mu(2.0, 1.0)));
  CHECK(parse_symbol("riesz:1")(w) == cplx(0.0, -1.0));
  CHECK_THROWS_AS(parse_symbol("nope"), Error);
  CHECK(parse_symbol("sqrt_tmu").name() == "sqrt_tmu");
}

TEST_CASE("dyadic bands stay inside the dealias band") {
  const Grid g(1, 256, 32.0 * M_PI);
  const auto bands = dyadic_bands(g);
  REQUIRE_FALSE(bands.empty());
  for (double b : bands) {
    CHECK(b >= 4.0 * M_PI / g.length() - 1e-12);
    CHECK(b <= (g.n() / 3.0) * g.dk() + 1e-12);
  }
}
