#pragma once

#include <optional>

#include "uasc/gpe.hpp"
#include "uasc/grid.hpp"
#include "uasc/snapshot.hpp"
#include "uasc/wkb.hpp"

namespace uasc::diag {

/// (l1, l2) with l1 = dx sum |u_k| and l2 = sqrt(dx sum |u_k|^2).
std::pair<double, double> discrete_norms(const ComplexField& u);
std::pair<double, double> discrete_norms(const RealField& u);

struct Observables {
  double mass = 0.0;
  double energy = 0.0;
  double momentum = 0.0;
};

Observables observables_psi(const gpe::WaveFunction& w);
/// Phase-amplitude observables; uses the real part of S.
Observables observables_wkb(const wkb::State& st, double eps);

struct ErrorMetrics {
  std::optional<double> rho;
  std::optional<double> psi;
  std::optional<double> sa;
};

struct MetricRequest {
  bool rho = true;
  bool psi = false;
  bool sa = false;
  /// err_sa compares (Re S, A) by default; this adds Im S as an extra
  /// component (meaningful for complex-phase candidates).
  bool include_imag_s = false;
};

/// Relative error metrics of a candidate against a reference. The reference
/// may live on a finer nested grid; it is restricted by spectral truncation
/// before comparison. rho compares densities in L1, psi and (S, A) in L2.
ErrorMetrics compute_errors(const StateSnapshot& cand, const StateSnapshot& ref,
                            const MetricRequest& req);

}  // namespace uasc::diag
