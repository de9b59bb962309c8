#include "uasc/eikonal.hpp"

#include <cmath>

#include "uasc/composition.hpp"
#include "uasc/spectral.hpp"

namespace uasc::eikonal {
namespace {

constexpr double kFootImagLimit = 1.0;  // runaway guard for complex feet

struct PhaseSpectra {
  ComplexField value;  // coefficients of S
  ComplexField grad;   // coefficients of S' (Nyquist zeroed)
  ComplexField grad_samples;
  double max_curvature = 0.0;  // max |S''| over the grid
};

PhaseSpectra analyze_phase(const ComplexField& s) {
  const Grid& g = s.grid();
  PhaseSpectra out{spectrum(s), ComplexField(g), ComplexField(g), 0.0};
  ComplexField curv(g);
  const bool even = (g.n % 2) == 0;
  for (int idx = 0; idx < g.n; ++idx) {
    const double k = g.wavenumber(idx);
    const bool nyq = even && idx == g.n / 2;
    out.grad[idx] = nyq ? cplx(0.0) : out.value[idx] * cplx(0.0, k);
    curv[idx] = out.value[idx] * (-k * k);
  }
  out.grad_samples = from_spectrum(out.grad);
  out.max_curvature = max_abs(from_spectrum(curv));
  return out;
}

std::vector<cplx> eval_one(const Grid& g, const ComplexField& coeffs,
                           std::span<const cplx> pts,
                           EvalMode mode = EvalMode::fast) {
  std::vector<cplx> vals(pts.size());
  const std::span<const cplx> sp[1] = {coeffs.samples()};
  const std::span<cplx> outs[1] = {vals};
  eval_trig_series(g, sp, pts, outs, true, mode);
  return vals;
}

void check_feet(std::span<const cplx> pts) {
  for (const cplx& p : pts)
    if (std::abs(p.imag()) >= kFootImagLimit)
      throw StepTooLargeError(
          "characteristic foot ran away from the real axis");
}

ComplexField semilag_core(const ComplexField& s0, double h, int depth,
                          bool experimental_depth, bool exact_eval) {
  if (depth < 1) throw StructuralError("fixed-point depth must be >= 1");
  if (depth > 2 && !experimental_depth)
    throw StructuralError("fixed-point depth > 2 is experimental");
  const EvalMode mode = exact_eval ? EvalMode::exact : EvalMode::fast;

  const Grid& g = s0.grid();
  const PhaseSpectra ps = analyze_phase(s0);
  if (std::abs(h) * ps.max_curvature >= 1.0)
    throw StepTooLargeError(
        "characteristic fixed point is not contracting; reduce the step");

  std::vector<cplx> feet(g.n);
  for (int j = 0; j < g.n; ++j)
    feet[j] = cplx(g.node(j), 0.0) - h * ps.grad_samples[j];
  for (int it = 2; it <= depth; ++it) {
    check_feet(feet);
    const std::vector<cplx> ds = eval_one(g, ps.grad, feet, mode);
    for (int j = 0; j < g.n; ++j) feet[j] = cplx(g.node(j), 0.0) - h * ds[j];
  }
  check_feet(feet);
  const std::vector<cplx> p = eval_one(g, ps.grad, feet, mode);

  std::vector<cplx> dep(g.n);
  for (int j = 0; j < g.n; ++j) dep[j] = cplx(g.node(j), 0.0) - h * p[j];
  check_feet(dep);
  const std::vector<cplx> s_at = eval_one(g, ps.value, dep, mode);

  ComplexField out(g);
  for (int j = 0; j < g.n; ++j)
    out[j] = s_at[j] + 0.5 * h * p[j] * p[j];  // unconjugated square
  return out;
}

}  // namespace

RealField semilag_step(const RealField& s0, double h, int depth,
                       bool experimental_depth, bool exact_eval) {
  return real_part(
      semilag_core(to_complex(s0), h, depth, experimental_depth, exact_eval));
}

ComplexField semilag_step(const ComplexField& s0, double h, int depth,
                          bool experimental_depth, bool exact_eval) {
  return semilag_core(s0, h, depth, experimental_depth, exact_eval);
}

ComplexField colehopf_flow1(const ComplexField& s0, double h,
                            double delta_log) {
  const Grid& g = s0.grid();
  ComplexField w0(g), den(g);
  for (int j = 0; j < g.n; ++j) {
    den[j] = std::exp(cplx(0.0, 0.5) * s0[j]);  // w0 + 1
    w0[j] = den[j] - 1.0;
    if (std::abs(den[j]) < 1e-12)
      throw DivisionGuardError("Cole-Hopf denominator vanished");
  }
  const ComplexField w1 = apply_multiplier(
      w0, [h](double k) { return std::polar(1.0, -k * k * h); });
  ComplexField ratio(g);
  double rmax = 0.0;
  for (int j = 0; j < g.n; ++j) {
    ratio[j] = (w1[j] - w0[j]) / den[j];
    rmax = std::max(rmax, std::abs(ratio[j]));
  }
  if (rmax >= 1.0 - delta_log)
    throw LogGuardError("Cole-Hopf logarithm argument left the guard disk; "
                        "reduce the time step");
  ComplexField out(g);
  for (int j = 0; j < g.n; ++j)
    out[j] = s0[j] - cplx(0.0, 2.0) * std::log(1.0 + ratio[j]);
  return out;
}

ComplexField colehopf_flow2(const ComplexField& s0, double h) {
  return apply_multiplier(
      s0, [h](double k) { return std::polar(1.0, k * k * h); });
}

RealField lie_step(const RealField& s0, double h, double delta_log) {
  ComplexField s = colehopf_flow2(to_complex(s0), h);
  s = colehopf_flow1(s, h, delta_log);
  return real_part(s);
}

RealField strang_step(const RealField& s0, double h, double delta_log) {
  ComplexField s = colehopf_flow1(to_complex(s0), 0.5 * h, delta_log);
  s = colehopf_flow2(s, h);
  s = colehopf_flow1(s, 0.5 * h, delta_log);
  return real_part(s);
}

RealField solve_step(const RealField& s0, double h, const SolverKind& kind) {
  switch (kind.method) {
    case SolverKind::Method::semi_lagrangian:
      return semilag_step(s0, h, kind.depth, kind.experimental_depth,
                          kind.exact_eval);
    case SolverKind::Method::cole_hopf_lie:
      return lie_step(s0, h, kind.delta_log);
    case SolverKind::Method::cole_hopf_strang:
      return strang_step(s0, h, kind.delta_log);
  }
  throw StructuralError("unknown eikonal solver");
}

RealField characteristics_oracle(const RealField& s0, double t, int substeps) {
  if (substeps < 1) throw StructuralError("substeps must be >= 1");
  const Grid& g = s0.grid();
  const PhaseSpectra ps = analyze_phase(to_complex(s0));
  ComplexField curv_coeffs(g);
  {
    const ComplexField c = ps.value;
    for (int idx = 0; idx < g.n; ++idx) {
      const double k = g.wavenumber(idx);
      curv_coeffs[idx] = c[idx] * (-k * k);
    }
  }

  std::vector<double> x0(g.n);
  for (int j = 0; j < g.n; ++j) x0[j] = g.node(j);
  std::vector<cplx> pts(g.n);
  std::vector<cplx> ds(g.n), d2s(g.n);
  const std::span<const cplx> sp[2] = {ps.grad.samples(),
                                       curv_coeffs.samples()};

  for (int s = 1; s <= substeps; ++s) {
    const double tt = t * s / substeps;
    bool converged = false;
    for (int iter = 0; iter < 50 && !converged; ++iter) {
      for (int j = 0; j < g.n; ++j) pts[j] = cplx(x0[j], 0.0);
      const std::span<cplx> outs[2] = {ds, d2s};
      eval_trig_series(g, sp, pts, outs, true);
      double max_dx = 0.0;
      for (int j = 0; j < g.n; ++j) {
        const double res = x0[j] + tt * ds[j].real() - g.node(j);
        const double slope = 1.0 + tt * d2s[j].real();
        if (slope <= 1e-10)
          throw OracleFailure(
              "characteristics cross: requested time is past the caustic");
        const double dx = res / slope;
        x0[j] -= dx;
        max_dx = std::max(max_dx, std::abs(dx));
      }
      converged = max_dx < 1e-13;
    }
    if (!converged)
      throw OracleFailure(
          "characteristic resampling did not converge (post-caustic time?)");
  }

  for (int j = 0; j < g.n; ++j) pts[j] = cplx(x0[j], 0.0);
  const std::vector<cplx> s_at = eval_one(g, ps.value, pts);
  const std::vector<cplx> p_at = eval_one(g, ps.grad, pts);
  RealField out(g);
  for (int j = 0; j < g.n; ++j) {
    const double p = p_at[j].real();
    out[j] = s_at[j].real() + 0.5 * t * p * p;
  }
  return out;
}

RealField viscous_colehopf_oracle(const RealField& s0, double t, double eps) {
  if (eps < 0.5)
    throw EpsRefusedError(
        "viscous Cole-Hopf oracle refuses eps < 0.5: exp(-S/(2 eps^2)) "
        "leaves the floating-point range");
  if (t < 0.0)
    throw IrreversibleStepError("heat flow runs forward in time only");
  const Grid& g = s0.grid();
  const double e2 = eps * eps;
  ComplexField w0(g);
  for (int j = 0; j < g.n; ++j)
    w0[j] = cplx(std::exp(-s0[j] / (2.0 * e2)) - 1.0, 0.0);
  const ComplexField w1 = apply_multiplier(
      w0, [t, e2](double k) { return cplx(std::exp(-e2 * k * k * t), 0.0); });
  RealField out(g);
  for (int j = 0; j < g.n; ++j) {
    const double arg = 1.0 + w1[j].real();
    if (arg <= 0.0)
      throw NumericError("viscous Cole-Hopf logarithm argument <= 0");
    out[j] = -2.0 * e2 * std::log(arg);
  }
  return out;
}

ComplexField yoshida_colehopf_step(const ComplexField& s0, double h,
                                   double delta_log) {
  ComplexField s = s0;
  yoshida_triple(
      [&](double tau) { s = colehopf_flow1(s, tau, delta_log); },
      [&](double tau) { s = colehopf_flow2(s, tau); }, h);
  return s;
}

}  // namespace uasc::eikonal
