#pragma once

#include <span>

namespace uasc {

/// Least-squares slope of log(y) against log(x). Pairs with y <= floor or
/// non-finite entries are dropped; the fit is valid with >= 2 surviving
/// points.
struct OrderFit {
  double slope = 0.0;
  double intercept = 0.0;  // of log y vs log x
  int points_used = 0;
  bool valid = false;

  /// Fitted y at a given x (geometric interpolation along the fit line).
  double value_at(double x) const;
};

OrderFit fit_loglog(std::span<const double> xs, std::span<const double> ys,
                    double floor = 0.0);

}  // namespace uasc
