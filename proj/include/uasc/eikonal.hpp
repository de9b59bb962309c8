#pragma once

#include "uasc/grid.hpp"

namespace uasc::eikonal {

/// Solver selection for the phase equation dS/dt + |grad S|^2 / 2 = 0.
struct SolverKind {
  enum class Method { semi_lagrangian, cole_hopf_lie, cole_hopf_strang };
  Method method = Method::semi_lagrangian;
  int depth = 1;           // characteristic-foot fixed-point applications
  double delta_log = 0.1;  // margin of the logarithm-argument guard
  bool experimental_depth = false;  // allows depth > 2
  bool exact_eval = false;          // exact-mode series evaluation

  static SolverKind semi_lagrangian(int depth) {
    return SolverKind{Method::semi_lagrangian, depth, 0.1, false, false};
  }
  static SolverKind cole_hopf_lie(double delta_log = 0.1) {
    return SolverKind{Method::cole_hopf_lie, 1, delta_log, false, false};
  }
  static SolverKind cole_hopf_strang(double delta_log = 0.1) {
    return SolverKind{Method::cole_hopf_strang, 1, delta_log, false, false};
  }
};

/// One spectral semi-Lagrangian step. depth = 1 gives the second-order
/// method, depth = 2 the fourth-order one (deeper fixed points are
/// experimental). Accepts steps of either sign; fails if |h| max|S''| >= 1.
RealField semilag_step(const RealField& s0, double h, int depth,
                       bool experimental_depth = false,
                       bool exact_eval = false);

/// Analytic continuation of semilag_step to complex-valued phases. The
/// Hamiltonian uses the unconjugated square (grad S . grad S)/2 and the
/// characteristic feet are complex; interpolation follows the entire
/// extension of the trigonometric interpolant.
ComplexField semilag_step(const ComplexField& s0, double h, int depth,
                          bool experimental_depth = false,
                          bool exact_eval = false);

/// Exact flow of dS/dt + (grad S . grad S)/2 - i Lap S = 0 over time h via
/// the modified Cole-Hopf substitution w = exp(iS/2) - 1.
ComplexField colehopf_flow1(const ComplexField& s0, double h,
                            double delta_log = 0.1);

/// Exact flow of dS/dt + i Lap S = 0 (free Schroedinger, either sign of h).
ComplexField colehopf_flow2(const ComplexField& s0, double h);

/// Lie-Trotter and Strang compositions of the two Cole-Hopf flows, projected
/// back to real values (orders 1 and 2).
RealField lie_step(const RealField& s0, double h, double delta_log = 0.1);
RealField strang_step(const RealField& s0, double h, double delta_log = 0.1);

/// Dispatch on SolverKind (single step of size h).
RealField solve_step(const RealField& s0, double h, const SolverKind& kind);

/// Exact solution by the method of characteristics, resampled to the grid
/// with a Newton solve per node. `substeps` only drives the continuation of
/// the Newton initial guesses; the converged result is substep-independent.
/// Fails past caustic formation for the given data.
RealField characteristics_oracle(const RealField& s0, double t, int substeps);

/// Cole-Hopf solution of the viscous phase equation
/// dS/dt + |grad S|^2/2 = eps^2 Lap S through the heat equation. Refuses
/// eps < 0.5: the substitution w = exp(-S/(2 eps^2)) - 1 leaves the
/// floating-point range for small eps.
RealField viscous_colehopf_oracle(const RealField& s0, double t, double eps);

/// Fourth-order Yoshida composition of the two Cole-Hopf flows on a
/// complex-valued phase (no real projection); used by the high-order scheme.
ComplexField yoshida_colehopf_step(const ComplexField& s0, double h,
                                   double delta_log = 0.1);

}  // namespace uasc::eikonal
