#include "uasc/fit.hpp"

#include <cmath>
#include <vector>

#include "uasc/errors.hpp"

namespace uasc {

double OrderFit::value_at(double x) const {
  return std::exp(intercept + slope * std::log(x));
}

OrderFit fit_loglog(std::span<const double> xs, std::span<const double> ys,
                    double floor) {
  if (xs.size() != ys.size())
    throw StructuralError("fit_loglog needs matching spans");
  std::vector<double> lx, ly;
  for (size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0.0) || !std::isfinite(ys[i]) || ys[i] <= floor) continue;
    lx.push_back(std::log(xs[i]));
    ly.push_back(std::log(ys[i]));
  }
  OrderFit fit;
  fit.points_used = static_cast<int>(lx.size());
  if (fit.points_used < 2) return fit;

  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= lx.size();
  my /= ly.size();
  double sxx = 0.0, sxy = 0.0;
  for (size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx == 0.0) return fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.valid = true;
  return fit;
}

}  // namespace uasc
