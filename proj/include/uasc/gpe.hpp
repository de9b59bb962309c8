#pragma once

#include "uasc/grid.hpp"
#include "uasc/initial_data.hpp"
#include "uasc/snapshot.hpp"
#include "uasc/wkb.hpp"

namespace uasc::gpe {

struct WaveFunction {
  ComplexField psi;
  double eps = 1.0;
};

/// Strang step for the direct equation: half kinetic multiplier
/// exp(-i eps k^2 h / 4), exact nonlinear phase exp(-i h |psi|^2 / eps),
/// half kinetic. Requires eps > 0 and h >= 0.
WaveFunction strang_step(WaveFunction w, double h);

/// Fourth-order triple-jump composition of the Strang step (the internal
/// sub-steps take either sign; every sub-flow is time-reversible).
WaveFunction order4_step(WaveFunction w, double h);

/// psi = A exp(i Re(S) / eps); refuses eps = 0.
WaveFunction wkb_to_psi(const wkb::State& st, double eps);

struct ReferenceRequest {
  std::string kind = "wkb4";  // "wkb4" or "gpe"
  double eps = 1.0;
  double tf = 0.1;
  int nx = 256;
  long nt = 8192;
  std::string data_id = "paper";
  wkb::SimParams params;  // eikonal choices for the wkb4 kind
};

struct ResourceLimits {
  int max_nx = 1 << 12;
  long max_nt = 1L << 21;
  void check(int nx, long nt) const {
    if (nx > max_nx || nt > max_nt)
      throw ResourceLimitError(
          "requested resolution exceeds the configured ceilings");
  }
};

/// Runs the designated order-4 method to tf and returns the snapshot.
StateSnapshot generate_reference(const ReferenceRequest& req,
                                 const ResourceLimits& limits);

}  // namespace uasc::gpe
