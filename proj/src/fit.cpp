#include "wblab/fit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "wblab/error.hpp"

namespace wblab {

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) throw Error("fit_line: need at least two paired points");
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw Error("fit_line: x values are all equal");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return f;
}

namespace {

FitResult fit_sorted(const std::vector<std::pair<double, double>>& pts) {
  std::vector<double> lx, ly;
  for (const auto& [x, y] : pts) {
    lx.push_back(std::log(x));
    ly.push_back(std::log(y));
  }
  const LineFit l = fit_line(lx, ly);
  FitResult r;
  r.exponent = l.slope;
  r.intercept = l.intercept;
  r.r_squared = l.r_squared;
  r.n_points = static_cast<int>(pts.size());
  r.window_lo = pts.front().first;
  r.window_hi = pts.back().first;
  return r;
}

}  // namespace

FitResult fit_loglog(const std::vector<double>& x, const std::vector<double>& y, bool allow_trim) {
  if (x.size() != y.size()) throw Error("fit_loglog: x and y differ in length");
  if (x.size() < 4) throw Error("fit_loglog: need at least 4 points, got " + std::to_string(x.size()));
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw Error("fit_loglog: data must be positive");
    pts.emplace_back(x[i], y[i]);
  }
  std::sort(pts.begin(), pts.end());
  FitResult r = fit_sorted(pts);
  if (allow_trim && r.r_squared < 0.98 && pts.size() >= 6) {
    pts.erase(pts.begin());
    pts.pop_back();
    r = fit_sorted(pts);
    r.trimmed = true;
  }
  return r;
}

}  // namespace wblab
