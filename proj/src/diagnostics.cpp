#include "uasc/diagnostics.hpp"

#include <cmath>

#include "uasc/spectral.hpp"

namespace uasc::diag {
namespace {

double l2sq_diff(const ComplexField& a, const ComplexField& b) {
  double acc = 0.0;
  for (int j = 0; j < a.size(); ++j) acc += std::norm(a[j] - b[j]);
  return a.grid().dx() * acc;
}

double l2sq(const ComplexField& a) {
  double acc = 0.0;
  for (int j = 0; j < a.size(); ++j) acc += std::norm(a[j]);
  return a.grid().dx() * acc;
}

RealField density(const StateSnapshot& s) {
  const ComplexField& f = s.is_wave() ? s.psi : s.A;
  RealField rho(f.grid());
  for (int j = 0; j < f.size(); ++j) rho[j] = std::norm(f[j]);
  return rho;
}

StateSnapshot restrict_to(const StateSnapshot& ref, int nx) {
  if (ref.grid().n == nx) return ref;
  if (ref.grid().n < nx)
    throw StructuralError(
        "reference grid is coarser than the candidate grid");
  StateSnapshot out = ref;
  if (ref.is_wave()) {
    out.psi = resample(ref.psi, nx);
  } else {
    out.S = resample(ref.S, nx);
    out.A = resample(ref.A, nx);
  }
  return out;
}

}  // namespace

std::pair<double, double> discrete_norms(const ComplexField& u) {
  double l1 = 0.0, l2 = 0.0;
  for (int j = 0; j < u.size(); ++j) {
    l1 += std::abs(u[j]);
    l2 += std::norm(u[j]);
  }
  const double dx = u.grid().dx();
  return {dx * l1, std::sqrt(dx * l2)};
}

std::pair<double, double> discrete_norms(const RealField& u) {
  return discrete_norms(to_complex(u));
}

Observables observables_psi(const gpe::WaveFunction& w) {
  const ComplexField dpsi = spectral_derivative(w.psi, 1);
  const double dx = w.psi.grid().dx();
  Observables o;
  for (int j = 0; j < w.psi.size(); ++j) {
    const double n2 = std::norm(w.psi[j]);
    o.mass += n2;
    o.energy += w.eps * w.eps * std::norm(dpsi[j]) + n2 * n2;
    o.momentum += std::imag(std::conj(w.psi[j]) * dpsi[j]);
  }
  o.mass *= dx;
  o.energy *= dx;
  o.momentum *= dx * w.eps;
  return o;
}

Observables observables_wkb(const wkb::State& st, double eps) {
  const ComplexField dA = spectral_derivative(st.A, 1);
  const RealField dS = spectral_derivative(real_part(st.S), 1);
  const double dx = st.A.grid().dx();
  Observables o;
  for (int j = 0; j < st.A.size(); ++j) {
    const cplx flux = eps * dA[j] + cplx(0.0, 1.0) * st.A[j] * dS[j];
    const double n2 = std::norm(st.A[j]);
    o.mass += n2;
    o.energy += std::norm(flux) + n2 * n2;
    o.momentum += std::imag(std::conj(st.A[j]) * flux);
  }
  o.mass *= dx;
  o.energy *= dx;
  o.momentum *= dx;
  return o;
}

ErrorMetrics compute_errors(const StateSnapshot& cand,
                            const StateSnapshot& ref,
                            const MetricRequest& req) {
  const int nx = cand.grid().n;
  const StateSnapshot r = restrict_to(ref, nx);
  ErrorMetrics out;

  if (req.rho) {
    const RealField rho_c = density(cand);
    const RealField rho_r = density(r);
    const auto [den_l1, den_l2] = discrete_norms(rho_r);
    (void)den_l2;
    if (den_l1 == 0.0)
      throw UndefinedMetricError("reference density has zero norm");
    RealField diff(rho_c.grid());
    for (int j = 0; j < nx; ++j) diff[j] = rho_r[j] - rho_c[j];
    out.rho = discrete_norms(diff).first / den_l1;
  }

  if (req.psi) {
    if (!cand.is_wave() || !r.is_wave())
      throw UndefinedMetricError("psi metric needs wave-layout states");
    const double den = l2sq(r.psi);
    if (den == 0.0)
      throw UndefinedMetricError("reference wave function has zero norm");
    out.psi = std::sqrt(l2sq_diff(r.psi, cand.psi) / den);
  }

  if (req.sa) {
    if (cand.is_wave() || r.is_wave())
      throw UndefinedMetricError("(S, A) metric needs phase-amplitude states");
    const ComplexField s_c = to_complex(real_part(cand.S));
    const ComplexField s_r = to_complex(real_part(r.S));
    double num = l2sq_diff(s_r, s_c) + l2sq_diff(r.A, cand.A);
    double den = l2sq(s_r) + l2sq(r.A);
    if (req.include_imag_s) {
      const ComplexField i_c = to_complex(imag_part(cand.S));
      const ComplexField i_r = to_complex(imag_part(r.S));
      num += l2sq_diff(i_r, i_c);
      den += l2sq(i_r);
    }
    if (den == 0.0)
      throw UndefinedMetricError("reference (S, A) has zero norm");
    out.sa = std::sqrt(num / den);
  }
  return out;
}

}  // namespace uasc::diag
