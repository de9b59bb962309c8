#pragma once

#include "uasc/grid.hpp"

namespace uasc {

/// Forward DFT; returns 1/N-normalized coefficients in FFT bin layout on the
/// same grid, so that from_spectrum(spectrum(f)) == f up to roundoff.
ComplexField spectrum(const ComplexField& f);
ComplexField spectrum(const RealField& f);

/// Inverse of spectrum(): unnormalized synthesis sum over e^{+i k x}.
ComplexField from_spectrum(const ComplexField& coeffs);

}  // namespace uasc
