#include "wblab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "wblab/error.hpp"

namespace wblab {

Grid::Grid(int dim, int n, double length) : dim_(dim), n_(n), length_(length) {
  if (dim != 1 && dim != 2) throw Error("grid dimension must be 1 or 2, got " + std::to_string(dim));
  if (n < 8 || (n & (n - 1)) != 0)
    throw Error("grid size must be a power of two >= 8, got " + std::to_string(n));
  if (!(length > 0.0) || !std::isfinite(length))
    throw Error("grid length must be positive and finite, got " + std::to_string(length));
}

double Grid::dk() const { return 2.0 * std::numbers::pi / length_; }

std::size_t Grid::size() const {
  return dim_ == 1 ? static_cast<std::size_t>(n_) : static_cast<std::size_t>(n_) * n_;
}

std::size_t Grid::spectral_size() const {
  return dim_ == 1 ? static_cast<std::size_t>(half_n()) : static_cast<std::size_t>(n_) * half_n();
}

std::vector<double> Grid::freqs() const {
  std::vector<double> out;
  out.reserve(n_);
  for (int k = -n_ / 2; k < n_ / 2; ++k) out.push_back(k * dk());
  return out;
}

Grid Grid::rescaled(double alpha) const {
  if (!(alpha > 0.0)) throw Error("rescaling factor must be positive");
  return Grid(dim_, n_, length_ / alpha);
}

double Wavevector::abs() const {
  return dim == 1 ? std::abs(xi[0]) : std::hypot(xi[0], xi[1]);
}

Field::Field(const Grid& g, std::vector<double> v) : grid(g), values(std::move(v)) {
  if (values.size() != g.size())
    throw Error("field has " + std::to_string(values.size()) + " samples, grid expects " +
                std::to_string(g.size()));
}

double Field::max_abs() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

double Field::min() const { return *std::min_element(values.begin(), values.end()); }

bool Field::all_finite() const {
  return std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
}

double Field::integral() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s * std::pow(grid.dx(), grid.dim());
}

Field& Field::operator+=(const Field& o) {
  for (std::size_t i = 0; i < values.size(); ++i) values[i] += o.values[i];
  return *this;
}

Field& Field::operator-=(const Field& o) {
  for (std::size_t i = 0; i < values.size(); ++i) values[i] -= o.values[i];
  return *this;
}

Field& Field::operator*=(double a) {
  for (double& v : values) v *= a;
  return *this;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(double a, Field f) { return f *= a; }

ComplexField::ComplexField(const Field& f) : grid(f.grid), values(f.values.begin(), f.values.end()) {}

double ComplexField::max_abs() const {
  double m = 0.0;
  for (const auto& v : values) m = std::max(m, std::abs(v));
  return m;
}

bool ComplexField::all_finite() const {
  return std::all_of(values.begin(), values.end(),
                     [](const cplx& v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); });
}

Field ComplexField::real() const {
  Field out(grid);
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = values[i].real();
  return out;
}

Field ComplexField::imag() const {
  Field out(grid);
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = values[i].imag();
  return out;
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += o.coeffs[i];
  return *this;
}

SpectralField& SpectralField::operator*=(cplx a) {
  for (auto& c : coeffs) c *= a;
  return *this;
}

}  // namespace wblab
