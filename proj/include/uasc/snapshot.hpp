#pragma once

#include <string>

#include "uasc/grid.hpp"

namespace uasc {

/// Persisted simulation state. Wave-layout snapshots (kinds "gpe" and
/// "strang_gpe") carry psi; all other kinds carry the phase-amplitude pair.
struct StateSnapshot {
  std::string kind;
  double eps = 0.0;
  double tf = 0.0;
  bool complex_S = false;
  ComplexField S;
  ComplexField A;
  ComplexField psi;

  bool is_wave() const { return kind == "gpe" || kind == "strang_gpe"; }
  const Grid& grid() const { return is_wave() ? psi.grid() : A.grid(); }
};

/// File format: one text header line
///   UASC1 <kind> <Nx> <eps-hex> <Tf-hex> <complexS:0|1>\n
/// followed by raw little-endian 8-byte floats. Phase-amplitude snapshots
/// store S real, S imag, A real, A imag (each of length Nx); wave snapshots
/// store psi real, psi imag.
void save_snapshot(const StateSnapshot& s, const std::string& path);
StateSnapshot load_snapshot(const std::string& path);

}  // namespace uasc
