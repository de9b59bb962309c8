#pragma once

#include <array>
#include <cmath>

#include "uasc/grid.hpp"

namespace uasc {

/// Coefficients of the fourth-order compositions: the 7-stage palindromic
/// real set (alpha) and the 9-stage complex set (beta) whose odd entries
/// drive the irreversible flow. Long double literals are kept alongside the
/// working doubles so consistency checks can run at sub-double precision.
struct CompositionCoefficients {
  std::array<double, 7> alpha;  // alpha1..alpha7
  std::array<cplx, 9> beta;     // beta1..beta9
};

inline constexpr std::array<long double, 9> kBetaRe = {
    0.060078275263542357774L, 0.18596881959910913140L,
    0.27021183913361078161L,  0.31403118040089086860L,
    0.33941977120569372122L,  0.31403118040089086860L,
    0.27021183913361078161L,  0.18596881959910913140L,
    0.060078275263542357774L};

inline constexpr std::array<long double, 9> kBetaIm = {
    -0.060314841253378523039L, 0.0L, 0.15290393229116195895L, 0.0L,
    -0.18517818207556687181L,  0.0L, 0.15290393229116195895L, 0.0L,
    -0.060314841253378523039L};

inline const CompositionCoefficients& composition_coefficients() {
  static const CompositionCoefficients c = [] {
    CompositionCoefficients cc;
    const double a1 = 1.0 / (2.0 * (2.0 - std::cbrt(2.0)));
    const double a2 = 1.0 / (2.0 - std::cbrt(2.0));
    cc.alpha = {a1, a2, 0.5 - a1, 1.0 - 2.0 * a2, 0.5 - a1, a2, a1};
    for (int j = 0; j < 9; ++j)
      cc.beta[j] = cplx(static_cast<double>(kBetaRe[j]),
                        static_cast<double>(kBetaIm[j]));
    return cc;
  }();
  return c;
}

/// Applies the 7-stage palindromic composition
/// a(alpha1 h) b(alpha2 h) a(alpha3 h) b(alpha4 h) a(alpha5 h) b(alpha6 h)
/// a(alpha7 h), executed right to left. Both flows must accept negative
/// steps (alpha4 < 0).
template <class FlowA, class FlowB>
void yoshida_triple(FlowA&& a, FlowB&& b, double h) {
  const auto& al = composition_coefficients().alpha;
  a(al[6] * h);
  b(al[5] * h);
  a(al[4] * h);
  b(al[3] * h);
  a(al[2] * h);
  b(al[1] * h);
  a(al[0] * h);
}

}  // namespace uasc
