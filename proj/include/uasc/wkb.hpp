#pragma once

#include "uasc/eikonal.hpp"
#include "uasc/grid.hpp"

namespace uasc::wkb {

/// Phase-amplitude state. S carries real values along the order-1/2 schemes
/// (they project after every composite step); the order-4 scheme lets it
/// become complex.
struct State {
  ComplexField S;
  ComplexField A;
};

State make_state(ComplexField s, ComplexField a);

enum class HighOrderEikonal { semi_lagrangian4, yoshida_cole_hopf };

struct SimParams {
  double eps = 1.0;
  double h = 1e-3;
  eikonal::SolverKind eik = eikonal::SolverKind::semi_lagrangian(1);
  HighOrderEikonal eik4 = HighOrderEikonal::semi_lagrangian4;
  bool dealias = false;
  bool interp_exact = false;  // exact-mode series evaluation in sub-solvers
  double eps_max = 1.0;

  void validate() const {
    if (!(h > 0.0)) throw StructuralError("time step must be positive");
    if (eps < 0.0) throw StructuralError("eps must be >= 0");
    if (eps > eps_max) throw StructuralError("eps exceeds eps_max");
  }
};

/// Phase advected by the eikonal solver, amplitude through w = A exp(iS)
/// and the free-Schroedinger multiplier exp(-i k^2 tau / 2); the final
/// unwrapping uses the updated phase.
void flow1(State& st, double tau, const eikonal::SolverKind& kind);

/// A-multiplier exp(-i (eps - 1) k^2 tau / 2); S untouched.
void flow2(State& st, double tau, double eps);

/// S -= tau |A|^2 pointwise; A untouched.
void flow3(State& st, double tau);

/// Regularizing flow: S through the heat multiplier exp(-eps^2 k^2 tau),
/// A times exp(-i (S' - S)/eps) with a cancellation-safe increment.
/// Defined for Re tau >= 0 only; eps = 0 is the exact identity.
void flow4(State& st, cplx tau, double eps);

State scheme1_step(State st, const SimParams& p);
State scheme2_step(State st, const SimParams& p);

/// Discrete L2 norm of the amplitude, sqrt(dx sum |A_j|^2).
double amplitude_l2(const State& st);

namespace detail {
/// Shared heat-phase update: returns S' and D = S' - S evaluated without
/// cancellation (expm1-style bracket in Fourier space).
std::pair<ComplexField, ComplexField> heat_phase_update(const ComplexField& s,
                                                        cplx tau, double eps);
cplx expm1c(cplx z);
}  // namespace detail

}  // namespace uasc::wkb
