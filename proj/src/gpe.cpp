#include "uasc/gpe.hpp"

#include <cmath>

#include "uasc/high_order.hpp"
#include "uasc/spectral.hpp"

namespace uasc::gpe {
namespace {

void strang_signed(WaveFunction& w, double h) {
  const double eps = w.eps;
  auto kinetic_half = [&] {
    w.psi = apply_multiplier(w.psi, [h, eps](double k) {
      return std::polar(1.0, -0.25 * eps * k * k * h);
    });
  };
  kinetic_half();
  for (int j = 0; j < w.psi.size(); ++j)
    w.psi[j] *= std::polar(1.0, -h * std::norm(w.psi[j]) / eps);
  kinetic_half();
}

}  // namespace

WaveFunction strang_step(WaveFunction w, double h) {
  if (!(w.eps > 0.0))
    throw EpsRefusedError("direct solver requires eps > 0");
  if (h < 0.0) throw StructuralError("strang_step requires h >= 0");
  if (h == 0.0) return w;
  strang_signed(w, h);
  return w;
}

WaveFunction order4_step(WaveFunction w, double h) {
  if (!(w.eps > 0.0))
    throw EpsRefusedError("direct solver requires eps > 0");
  const double g1 = 1.0 / (2.0 - std::cbrt(2.0));
  const double g0 = 1.0 - 2.0 * g1;
  strang_signed(w, g1 * h);
  strang_signed(w, g0 * h);
  strang_signed(w, g1 * h);
  return w;
}

WaveFunction wkb_to_psi(const wkb::State& st, double eps) {
  if (!(eps > 0.0))
    throw EpsRefusedError("no single-phase reconstruction at eps = 0");
  WaveFunction w{ComplexField(st.A.grid()), eps};
  for (int j = 0; j < st.A.size(); ++j)
    w.psi[j] = st.A[j] * std::polar(1.0, st.S[j].real() / eps);
  return w;
}

StateSnapshot generate_reference(const ReferenceRequest& req,
                                 const ResourceLimits& limits) {
  limits.check(req.nx, req.nt);
  if (req.nt < 1) throw StructuralError("reference needs nt >= 1");
  const Grid g = make_grid(req.nx);
  const InitialData data = make_initial_data(req.data_id);
  const double h = req.tf / req.nt;

  StateSnapshot snap;
  snap.kind = req.kind;
  snap.eps = req.eps;
  snap.tf = req.tf;

  if (req.kind == "wkb4") {
    wkb::SimParams p = req.params;
    p.eps = req.eps;
    p.h = h;
    wkb::State st = initial_wkb_state(data, g);
    for (long s = 0; s < req.nt; ++s) st = high_order::scheme4_step(st, p);
    snap.complex_S = true;
    snap.S = std::move(st.S);
    snap.A = std::move(st.A);
    return snap;
  }
  if (req.kind == "gpe") {
    const wkb::State st0 = initial_wkb_state(data, g);
    WaveFunction w = wkb_to_psi(st0, req.eps);
    for (long s = 0; s < req.nt; ++s) w = order4_step(w, h);
    snap.complex_S = false;
    snap.psi = std::move(w.psi);
    return snap;
  }
  throw UsageError("unknown reference kind: " + req.kind);
}

}  // namespace uasc::gpe
