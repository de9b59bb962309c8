#include "uasc/high_order.hpp"

#include <cmath>

#include "uasc/spectral.hpp"

namespace uasc::high_order {
namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
const cplx kI(0.0, 1.0);

ComplexField solve_complex_eikonal(const ComplexField& s, double tau,
                                   wkb::HighOrderEikonal eik,
                                   double delta_log, bool exact_eval) {
  switch (eik) {
    case wkb::HighOrderEikonal::semi_lagrangian4:
      return eikonal::semilag_step(s, tau, 2, false, exact_eval);
    case wkb::HighOrderEikonal::yoshida_cole_hopf:
      return eikonal::yoshida_colehopf_step(s, tau, delta_log);
  }
  throw StructuralError("unknown high-order eikonal solver");
}

}  // namespace

VState to_vstate(const wkb::State& st) {
  const Grid& g = st.S.grid();
  VState v{st.S, ComplexField(g), ComplexField(g)};
  for (int j = 0; j < g.n; ++j) {
    const cplx a1(st.A[j].real(), 0.0);
    const cplx a2(st.A[j].imag(), 0.0);
    v.v1[j] = kInvSqrt2 * (a1 - kI * a2);
    v.v2[j] = kInvSqrt2 * (kI * a1 - a2);
  }
  return v;
}

wkb::State from_vstate(const VState& v) {
  const Grid& g = v.S.grid();
  wkb::State st{v.S, ComplexField(g)};
  for (int j = 0; j < g.n; ++j) {
    const cplx a1 = kInvSqrt2 * (v.v1[j] - kI * v.v2[j]);
    const cplx a2 = kInvSqrt2 * (kI * v.v1[j] - v.v2[j]);
    st.A[j] = a1 + kI * a2;
  }
  return st;
}

void tflow1(VState& v, double tau, wkb::HighOrderEikonal eik, double eps,
            double delta_log, bool exact_eval) {
  (void)eps;
  const Grid& g = v.S.grid();
  const ComplexField s_old = v.S;
  const ComplexField s_new =
      solve_complex_eikonal(s_old, tau, eik, delta_log, exact_eval);

  for (ComplexField* comp : {&v.v1, &v.v2}) {
    ComplexField w(g);
    for (int j = 0; j < g.n; ++j)
      w[j] = (*comp)[j] * std::exp(kI * s_old[j]);
    w = apply_multiplier(
        w, [tau](double k) { return std::polar(1.0, -0.5 * k * k * tau); });
    for (int j = 0; j < g.n; ++j)
      (*comp)[j] = w[j] * std::exp(-kI * s_new[j]);
  }
  v.S = s_new;
}

void tflow2(VState& v, double tau, double eps) {
  if (tau == 0.0) return;
  v.v1 = apply_multiplier(v.v1, [tau, eps](double k) {
    return std::polar(1.0, 0.5 * (eps + 1.0) * k * k * tau);
  });
  v.v2 = apply_multiplier(v.v2, [tau, eps](double k) {
    return std::polar(1.0, 0.5 * (1.0 - eps) * k * k * tau);
  });
}

void tflow3(VState& v, double tau) {
  for (int j = 0; j < v.S.size(); ++j)
    v.S[j] += 2.0 * kI * tau * v.v1[j] * v.v2[j];
}

void tflow4(VState& v, cplx tau, double eps) {
  if (tau.real() < 0.0)
    throw IrreversibleStepError(
        "regularizing flow is defined for Re tau >= 0 only");
  if (eps == 0.0 || tau == cplx(0.0)) return;
  auto [s_new, d] = wkb::detail::heat_phase_update(v.S, tau, eps);
  const double inv_eps = 1.0 / eps;
  for (int j = 0; j < v.S.size(); ++j) {
    const cplx phase = kI * inv_eps * d[j];
    v.v1[j] *= std::exp(phase);
    v.v2[j] *= std::exp(-phase);
  }
  v.S = std::move(s_new);
}

void flow12(VState& v, double h, const wkb::SimParams& p) {
  yoshida_triple(
      [&](double tau) { tflow2(v, tau, p.eps); },
      [&](double tau) {
        tflow1(v, tau, p.eik4, p.eps, p.eik.delta_log, p.interp_exact);
      },
      h);
}

void flow123(VState& v, double h, const wkb::SimParams& p) {
  yoshida_triple([&](double tau) { flow12(v, tau, p); },
                 [&](double tau) { tflow3(v, tau); }, h);
}

wkb::State scheme4_step(wkb::State st, const wkb::SimParams& p) {
  p.validate();
  const auto& beta = composition_coefficients().beta;
  VState v = to_vstate(st);
  // beta9 .. beta1; odd entries drive the irreversible flow, even entries
  // are real and drive the Schroedinger part
  tflow4(v, beta[8] * p.h, p.eps);
  flow123(v, beta[7].real() * p.h, p);
  tflow4(v, beta[6] * p.h, p.eps);
  flow123(v, beta[5].real() * p.h, p);
  tflow4(v, beta[4] * p.h, p.eps);
  flow123(v, beta[3].real() * p.h, p);
  tflow4(v, beta[2] * p.h, p.eps);
  flow123(v, beta[1].real() * p.h, p);
  tflow4(v, beta[0] * p.h, p.eps);
  wkb::State out = from_vstate(v);
  if (p.dealias) {
    dealias_two_thirds(out.S);
    dealias_two_thirds(out.A);
  }
  return out;
}

}  // namespace uasc::high_order
