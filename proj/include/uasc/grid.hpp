#pragma once

#include <complex>
#include <numbers>
#include <span>
#include <vector>

#include "uasc/errors.hpp"

namespace uasc {

using cplx = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi_v<double>;

/// Uniform periodic grid on [0, L). Nodes exclude the right endpoint;
/// wavenumbers follow the FFT layout (0, 1, ..., -1) scaled by 2*pi/L.
struct Grid {
  int n = 0;
  double length = kTwoPi;

  double dx() const { return length / n; }
  double node(int j) const { return length * j / n; }

  /// Integer mode number of FFT bin `idx`; the Nyquist bin of an even grid
  /// maps to -n/2.
  int mode_number(int idx) const { return idx <= (n - 1) / 2 ? idx : idx - n; }
  double wavenumber(int idx) const {
    return kTwoPi * mode_number(idx) / length;
  }
  /// FFT bin holding integer mode m (m in the symmetric range).
  int bin_of_mode(int m) const { return m >= 0 ? m : m + n; }

  bool operator==(const Grid&) const = default;
};

inline Grid make_grid(int n, double length = kTwoPi) {
  if (n < 4) throw StructuralError("grid needs at least 4 points");
  if (!(length > 0.0)) throw StructuralError("grid length must be positive");
  return Grid{n, length};
}

template <class T>
class Field {
 public:
  Field() = default;
  explicit Field(const Grid& g, T fill = T{})
      : grid_(g), v_(static_cast<size_t>(g.n), fill) {
    if (g.n < 4) throw StructuralError("field bound to invalid grid");
  }

  template <class F>
  static Field sampled(const Grid& g, F&& f) {
    Field out(g);
    for (int j = 0; j < g.n; ++j) out.v_[j] = f(g.node(j));
    return out;
  }

  const Grid& grid() const { return grid_; }
  int size() const { return static_cast<int>(v_.size()); }

  T& operator[](int j) { return v_[j]; }
  const T& operator[](int j) const { return v_[j]; }

  std::span<T> samples() { return v_; }
  std::span<const T> samples() const { return v_; }
  T* data() { return v_.data(); }
  const T* data() const { return v_.data(); }

 private:
  Grid grid_;
  std::vector<T> v_;
};

using RealField = Field<double>;
using ComplexField = Field<cplx>;

inline void require_same_grid(const Grid& a, const Grid& b) {
  if (!(a == b)) throw StructuralError("fields live on different grids");
}

inline ComplexField to_complex(const RealField& f) {
  ComplexField out(f.grid());
  for (int j = 0; j < f.size(); ++j) out[j] = cplx(f[j], 0.0);
  return out;
}

inline RealField real_part(const ComplexField& f) {
  RealField out(f.grid());
  for (int j = 0; j < f.size(); ++j) out[j] = f[j].real();
  return out;
}

inline RealField imag_part(const ComplexField& f) {
  RealField out(f.grid());
  for (int j = 0; j < f.size(); ++j) out[j] = f[j].imag();
  return out;
}

inline double max_abs(const ComplexField& f) {
  double m = 0.0;
  for (int j = 0; j < f.size(); ++j) m = std::max(m, std::abs(f[j]));
  return m;
}

inline double max_abs_imag(const ComplexField& f) {
  double m = 0.0;
  for (int j = 0; j < f.size(); ++j) m = std::max(m, std::abs(f[j].imag()));
  return m;
}

}  // namespace uasc
