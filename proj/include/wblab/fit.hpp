#pragma once

#include <vector>

namespace wblab {

struct FitResult {
  double exponent = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  int n_points = 0;
  /// Range of x actually used.
  double window_lo = 0.0;
  double window_hi = 0.0;
  /// True when the two extreme points were dropped after a poor first fit.
  bool trimmed = false;
};

/// Least-squares fit of log y = intercept + exponent log x. When r^2 < 0.98 and at least
/// six points are present, the smallest and largest x are dropped and the fit redone.
/// Throws Error for fewer than four points or non-positive data.
FitResult fit_loglog(const std::vector<double>& x, const std::vector<double>& y, bool allow_trim = true);

/// Ordinary least squares y = a + b x; returns {b, a, r^2}.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace wblab
