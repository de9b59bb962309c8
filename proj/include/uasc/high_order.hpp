#pragma once

#include "uasc/composition.hpp"
#include "uasc/wkb.hpp"

namespace uasc::high_order {

/// Pauli-rotated amplitude pair: V = P (A1, A2)^T with
/// P = (1/sqrt 2) [[1, -i], [i, -1]], P^2 = I.
struct VState {
  ComplexField S;
  ComplexField v1;
  ComplexField v2;
};

VState to_vstate(const wkb::State& st);
wkb::State from_vstate(const VState& v);

/// Phase advanced through the complex eikonal equation (unconjugated
/// Hamiltonian), both V components through w_j = v_j exp(iS) and the free
/// Schroedinger multiplier, unwrapped with the updated phase.
void tflow1(VState& v, double tau, wkb::HighOrderEikonal eik, double eps,
            double delta_log = 0.1, bool exact_eval = false);

/// v1 multiplier exp(+i (eps+1) k^2 tau / 2), v2 exp(+i (1-eps) k^2 tau / 2).
void tflow2(VState& v, double tau, double eps);

/// S += 2 i tau v1 v2 pointwise.
void tflow3(VState& v, double tau);

/// Heat flow on S; v1 *= exp(+i D / eps), v2 *= exp(-i D / eps) with
/// D = S' - S. Re tau >= 0; eps = 0 is the identity.
void tflow4(VState& v, cplx tau, double eps);

/// 7-stage composition of tflow2 (outer slots) and tflow1 (inner slots).
void flow12(VState& v, double h, const wkb::SimParams& p);

/// 7-stage composition of flow12 (outer slots) and tflow3 (inner slots).
void flow123(VState& v, double h, const wkb::SimParams& p);

/// 9-stage complex-coefficient step conjugated by the Pauli rotation. The
/// phase is not projected to real values; it stays complex along
/// trajectories and only its real part is physical at output time.
wkb::State scheme4_step(wkb::State st, const wkb::SimParams& p);

}  // namespace uasc::high_order
