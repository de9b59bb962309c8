#pragma once

#include <functional>
#include <span>
#include <vector>

#include "uasc/fft.hpp"
#include "uasc/grid.hpp"

namespace uasc {

/// Derivative of the trigonometric interpolant. The Nyquist mode of an even
/// grid is zeroed for odd orders (symmetric convention, keeps real fields
/// real) and kept for even orders.
ComplexField spectral_derivative(const ComplexField& f, int order);
RealField spectral_derivative(const RealField& f, int order);

/// Multiplies each Fourier coefficient by m(k). The symbol must be finite at
/// every grid wavenumber.
ComplexField apply_multiplier(const ComplexField& f,
                              const std::function<cplx(double)>& m);

/// 2/3-rule filter: zeroes all modes with |m| > n/3. Off by default
/// everywhere; enabled through SimParams / sweep configuration.
void dealias_two_thirds(ComplexField& f);

/// Band-limited resampling between periodic grids of sizes n and new_n
/// (spectral truncation or zero-padded extension). Exact whenever the data
/// fits the smaller band. Downsampling requires nested sizes (n % new_n == 0).
ComplexField resample(const ComplexField& f, int new_n);
RealField resample(const RealField& f, int new_n);

/// Evaluation precision of the direct series summation. The fast mode uses
/// windowed power recurrences (bounded ~1e-14 relative error); the exact
/// mode evaluates one exponential per mode and point, about an order of
/// magnitude more accurate and several times slower. Long time-stepping
/// studies that chase errors near 1e-11 select the exact mode.
enum class EvalMode { fast, exact };

/// Evaluates trigonometric series at arbitrary points by direct summation,
/// O(n) per point. `spectra` are 1/N-normalized coefficient arrays in FFT bin
/// layout (as produced by spectrum()); all series are evaluated at the same
/// points in one pass. Points may be complex: the series is an entire
/// function and is evaluated by analytic continuation. The Nyquist mode of an
/// even grid contributes as cos(k_ny x).
void eval_trig_series(const Grid& g,
                      std::span<const std::span<const cplx>> spectra,
                      std::span<const cplx> points,
                      std::span<const std::span<cplx>> out, bool parallel,
                      EvalMode mode = EvalMode::fast);

/// Obviously-correct per-mode reference implementation of eval_trig_series;
/// used by tests and benchmarks only.
void eval_trig_series_reference(const Grid& g,
                                std::span<const std::span<const cplx>> spectra,
                                std::span<const cplx> points,
                                std::span<const std::span<cplx>> out);

/// Exact trigonometric interpolation of a sampled field at off-grid points.
std::vector<cplx> interpolate_trig(const ComplexField& f,
                                   std::span<const cplx> points);
std::vector<double> interpolate_trig(const RealField& f,
                                     std::span<const double> points);

}  // namespace uasc
