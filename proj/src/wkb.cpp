#include "uasc/wkb.hpp"

#include <cmath>

#include "uasc/spectral.hpp"

namespace uasc::wkb {

State make_state(ComplexField s, ComplexField a) {
  require_same_grid(s.grid(), a.grid());
  return State{std::move(s), std::move(a)};
}

namespace detail {

cplx expm1c(cplx z) {
  // exp(z) - 1 without cancellation for small |z|
  const double x = z.real(), y = z.imag();
  const double em = std::expm1(x);
  const double sy = std::sin(0.5 * y);
  const double re = em * std::cos(y) - 2.0 * sy * sy;
  const double im = (em + 1.0) * std::sin(y);
  return cplx(re, im);
}

std::pair<ComplexField, ComplexField> heat_phase_update(const ComplexField& s,
                                                        cplx tau, double eps) {
  const Grid& g = s.grid();
  const double e2 = eps * eps;
  ComplexField c = spectrum(s);
  ComplexField cd(g);
  for (int idx = 0; idx < g.n; ++idx) {
    const double k = g.wavenumber(idx);
    const cplx z = -e2 * k * k * tau;
    cd[idx] = expm1c(z) * c[idx];
    c[idx] *= std::exp(z);
  }
  return {from_spectrum(c), from_spectrum(cd)};
}

}  // namespace detail

void flow1(State& st, double tau, const eikonal::SolverKind& kind) {
  const Grid& g = st.S.grid();
  const RealField s_old = real_part(st.S);
  const RealField s_new = eikonal::solve_step(s_old, tau, kind);

  ComplexField w(g);
  for (int j = 0; j < g.n; ++j)
    w[j] = st.A[j] * std::exp(cplx(0.0, s_old[j]));
  w = apply_multiplier(
      w, [tau](double k) { return std::polar(1.0, -0.5 * k * k * tau); });
  for (int j = 0; j < g.n; ++j) {
    st.A[j] = w[j] * std::exp(cplx(0.0, -s_new[j]));
    st.S[j] = cplx(s_new[j], 0.0);
  }
}

void flow2(State& st, double tau, double eps) {
  if (tau == 0.0 || eps == 1.0) return;
  st.A = apply_multiplier(st.A, [tau, eps](double k) {
    return std::polar(1.0, -0.5 * (eps - 1.0) * k * k * tau);
  });
}

void flow3(State& st, double tau) {
  for (int j = 0; j < st.S.size(); ++j) st.S[j] -= tau * std::norm(st.A[j]);
}

void flow4(State& st, cplx tau, double eps) {
  if (tau.real() < 0.0)
    throw IrreversibleStepError(
        "regularizing flow is defined for Re tau >= 0 only");
  if (eps == 0.0 || tau == cplx(0.0)) return;
  auto [s_new, d] = detail::heat_phase_update(st.S, tau, eps);
  const double inv_eps = 1.0 / eps;
  for (int j = 0; j < st.S.size(); ++j)
    st.A[j] *= std::exp(cplx(0.0, -1.0) * inv_eps * d[j]);
  st.S = std::move(s_new);
}

namespace {

void project_real_phase(State& st) {
  for (int j = 0; j < st.S.size(); ++j) st.S[j] = cplx(st.S[j].real(), 0.0);
}

void maybe_dealias(State& st, const SimParams& p) {
  if (!p.dealias) return;
  dealias_two_thirds(st.S);
  dealias_two_thirds(st.A);
}

}  // namespace

State scheme1_step(State st, const SimParams& p) {
  p.validate();
  eikonal::SolverKind kind = p.eik;
  kind.exact_eval = kind.exact_eval || p.interp_exact;
  flow4(st, p.h, p.eps);
  flow3(st, p.h);
  flow2(st, p.h, p.eps);
  flow1(st, p.h, kind);
  project_real_phase(st);
  maybe_dealias(st, p);
  return st;
}

State scheme2_step(State st, const SimParams& p) {
  p.validate();
  eikonal::SolverKind kind = p.eik;
  kind.exact_eval = kind.exact_eval || p.interp_exact;
  const double half = 0.5 * p.h;
  flow1(st, half, kind);
  flow2(st, half, p.eps);
  flow3(st, half);
  flow4(st, p.h, p.eps);
  flow3(st, half);
  flow2(st, half, p.eps);
  flow1(st, half, kind);
  project_real_phase(st);
  maybe_dealias(st, p);
  return st;
}

double amplitude_l2(const State& st) {
  double acc = 0.0;
  for (int j = 0; j < st.A.size(); ++j) acc += std::norm(st.A[j]);
  return std::sqrt(st.A.grid().dx() * acc);
}

}  // namespace uasc::wkb
